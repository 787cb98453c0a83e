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
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "reupload/channel.hpp"
#include "reupload/states.hpp"

namespace reupload {

using Dataset = std::vector<LabeledState>;

enum class Loss { Mse, Logistic };

struct TrainConfig {
  Loss loss = Loss::Logistic;
  double learning_rate = 0.05;
  int max_epochs = 300;
  /// 0 or anything at least the training-set size means full batch.
  int batch_size = 0;
  std::uint64_t seed = 1;
  /// 0 = exact expectations.
  int shots = 0;
  double fd_step = 1e-5;
  double classification_threshold = 0.0;
  /// Slope κ of the logistic surrogate σ(κ(f - threshold)).
  double logistic_scale = 10.0;
  /// Train the single-qubit rotation angles of every layer.
  bool train_rotations = true;

  /// Throws std::invalid_argument for a non-positive rate or fd_step outside (0, 1e-2].
  void validate() const;
};

struct HistogramBin {
  double low = 0.0;
  double high = 0.0;
  int count_class0 = 0;
  int count_class1 = 0;
};

struct Evaluation {
  double accuracy = 0.0;
  double mse = 0.0;
  double max_abs_error = 0.0;
  std::vector<HistogramBin> histogram;
};

struct TrainReport {
  std::vector<double> loss_history;
  std::vector<double> test_accuracy_history;
  ReuploadModel final_params;
  double test_accuracy = 0.0;
  double test_mse = 0.0;
  double test_max_abs_error = 0.0;
  std::vector<HistogramBin> histogram;
  std::string loss_description;
};

/// Flat parameter vector: per layer (θ, φ, β, generator coefficients...), then w, b.
Eigen::VectorXd model_parameters(const ReuploadModel& model);
void set_model_parameters(ReuploadModel& model, const Eigen::VectorXd& params);

/// [f(θ_l + π/2) - f(θ_l - π/2)] / 2 for the z-rotation angle of layer layer_index (0-based).
/// Throws std::invalid_argument for general couplings.
double gradient_param_shift(const ReuploadModel& model, const DensityMatrix& rho, int layer_index);

/// Mean per-sample loss and model outputs over a dataset.
double dataset_loss(const ReuploadModel& model, const Dataset& data, const TrainConfig& config,
                    std::uint64_t stream = 0);

/// Central differences of the mean batch loss in every flat parameter. With shots > 0 the
/// two sides of each difference share their random numbers.
Eigen::VectorXd gradient_fd(const ReuploadModel& model, const Dataset& batch, const TrainConfig& config,
                            std::uint64_t stream = 0);

/// Adam (β₁ = 0.9, β₂ = 0.999, ε = 1e-8) on finite-difference gradients. Throws
/// std::runtime_error on a non-finite loss.
TrainReport train(ReuploadModel model, const Dataset& train_set, const Dataset& test_set, const TrainConfig& config);

/// Accuracy (prediction 1 iff f ≥ threshold), squared and absolute errors against the labels,
/// and a 30-bin histogram of predicted classes over the meta range.
Evaluation evaluate(const ReuploadModel& model, const Dataset& data, const TrainConfig& config);

/// L general layers on n input qubits: generator coefficients ~ N(0, 0.1), w ~ N(0, 0.5), b = 0,
/// signal starting in |0⟩.
ReuploadModel init_general_model(int n_qubits, int layers, Rng& rng);

/// L CNOT layers with angles ~ N(0, 0.1), w ~ N(0, 0.5), b = 0, signal starting in |+⟩.
ReuploadModel init_restricted_model(int layers, Rng& rng);

}  // namespace reupload
