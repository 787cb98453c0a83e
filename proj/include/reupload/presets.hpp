// Copyright 2026 The Reupload Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "reupload/tasks.hpp"

namespace reupload {

/// Comparison applied to an obtained value.
enum class Bound { AtMost, AtLeast };

struct PresetRow {
  std::string quantity;
  /// Reported reference value, empty when there is none.
  std::string reference;
  double obtained = 0.0;
  Bound bound = Bound::AtMost;
  double limit = 0.0;
  bool pass = false;
};

struct PresetOptions {
  int train_size = 1000;
  int test_size = 500;
  std::uint64_t seed = 1;
  /// Single depth instead of the preset's sweep.
  std::optional<int> layers;
  std::optional<int> epochs;
  std::optional<double> learning_rate;
  int shots = 0;
  /// Directory for reports and CSV curves; empty skips file output.
  std::string out_dir;
};

struct PresetResult {
  std::string name;
  std::vector<PresetRow> rows;
  bool pass() const;
};

/// poly-linear, poly-quartic, purity, entropy, band, double-band, hadamard-demo, verify-all.
std::vector<std::string> preset_names();

/// Layer counts, reference accuracies and bands of a classification preset.
struct ClassificationPreset {
  Task task;
  int n_qubits;
  int epochs;
  double learning_rate;
  std::vector<int> layers;
  std::vector<std::string> reference;
  std::vector<Bound> bounds;
  std::vector<double> limits;
};
std::optional<ClassificationPreset> classification_preset(const std::string& name);

/// Trains one general model on a fresh split. Data come from Rng(seed), the initial model
/// from Rng(seed + 100).
TrainReport run_classification(const ClassificationPreset& p, int layers, const PresetOptions& o);

/// f(λ) = λ with L = 1 (which = 0) or 3(λ + 0.8)λ(λ - 0.5)² + 0.3 with L = 4 (which = 1),
/// trained on the 101-point ψ grid with MSE.
TrainReport run_polynomial_fit(int which, const PresetOptions& o);

/// Throws std::invalid_argument for unknown names.
PresetResult run_preset(const std::string& name, const PresetOptions& o);

}  // namespace reupload
