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

#include <functional>
#include <optional>
#include <string>

#include "reupload/trainer.hpp"

namespace reupload {

/// Dataset families. Labels are a pure function of the stored meta scalar.
enum class Task { Purity, Entropy, Band, DoubleBand, PsiGrid };

std::optional<Task> parse_task(const std::string& name);
std::string task_name(Task t);
/// purity, entropy, r3 or lambda.
std::string meta_name(Task t);

/// (1 + 2^{-2/3}) / 2: half of the uniform Bloch ball lies above this purity.
double purity_threshold();
/// Rényi-2 entropy threshold in bits.
inline constexpr double kEntropyThreshold = 0.3;

/// Classification rule of a task applied to its meta scalar.
int label_from_meta(Task t, double meta);

/// Samples a labeled dataset: Bloch-ball states (purity), Haar two-qubit pure states
/// (Rényi-2 entropy of the first qubit in bits) or Bloch-sphere states (band: |r3| ≥ 0.5; double band:
/// r3 ≥ 0.5 or -0.5 ≤ r3 < 0). Throws for PsiGrid.
Dataset generate_dataset(Task t, int size, Rng& rng);

/// ψ(t) states at λ_k = -1 + 2(k + 1)/(points + 1), labeled by target(λ_k).
Dataset psi_grid(int points, const std::function<double(double)>& target);

/// Fraction of samples with label 1.
double class_balance(const Dataset& d);

}  // namespace reupload
