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

#include "reupload/tasks.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace reupload {

std::optional<Task> parse_task(const std::string& name) {
  if (name == "purity") return Task::Purity;
  if (name == "entropy") return Task::Entropy;
  if (name == "band") return Task::Band;
  if (name == "double-band") return Task::DoubleBand;
  if (name == "psi-grid") return Task::PsiGrid;
  return std::nullopt;
}

std::string task_name(Task t) {
  switch (t) {
    case Task::Purity: return "purity";
    case Task::Entropy: return "entropy";
    case Task::Band: return "band";
    case Task::DoubleBand: return "double-band";
    case Task::PsiGrid: return "psi-grid";
  }
  return "";
}

std::string meta_name(Task t) {
  switch (t) {
    case Task::Purity: return "purity";
    case Task::Entropy: return "entropy";
    case Task::Band:
    case Task::DoubleBand: return "r3";
    case Task::PsiGrid: return "lambda";
  }
  return "";
}

double purity_threshold() { return 0.5 * (1.0 + std::pow(2.0, -2.0 / 3.0)); }

int label_from_meta(Task t, double meta) {
  switch (t) {
    case Task::Purity: return meta >= purity_threshold() ? 1 : 0;
    case Task::Entropy: return meta >= kEntropyThreshold ? 1 : 0;
    case Task::Band: return std::abs(meta) >= 0.5 ? 1 : 0;
    case Task::DoubleBand: return (meta >= 0.5 || (meta >= -0.5 && meta < 0.0)) ? 1 : 0;
    case Task::PsiGrid: break;
  }
  throw std::invalid_argument("label_from_meta: psi-grid labels come from the target function");
}

Dataset generate_dataset(Task t, int size, Rng& rng) {
  if (size < 0) throw std::invalid_argument("generate_dataset: negative size");
  Dataset out;
  out.reserve(static_cast<std::size_t>(size));
  for (int k = 0; k < size; ++k) {
    DensityMatrix rho;
    double meta = 0.0;
    switch (t) {
      case Task::Purity:
        rho = sample_bloch_ball(rng);
        meta = purity(rho);
        break;
      case Task::Entropy:
        rho = sample_haar_pure(2, rng);
        meta = renyi2_entropy(rho) / std::numbers::ln2;
        break;
      case Task::Band:
      case Task::DoubleBand:
        rho = sample_bloch_sphere(rng);
        meta = bloch_vector(rho)(2);
        break;
      case Task::PsiGrid:
        throw std::invalid_argument("generate_dataset: use psi_grid for the psi-grid task");
    }
    out.push_back({rho, static_cast<double>(label_from_meta(t, meta)), std::make_pair(meta_name(t), meta)});
  }
  return out;
}

Dataset psi_grid(int points, const std::function<double(double)>& target) {
  if (points < 1) throw std::invalid_argument("psi_grid: need at least one point");
  Dataset out;
  for (int k = 0; k < points; ++k) {
    const double lambda = -1.0 + 2.0 * (k + 1) / (points + 1);
    out.push_back({psi_t(t_from_lambda(lambda)), target(lambda), std::make_pair(std::string("lambda"), lambda)});
  }
  return out;
}

double class_balance(const Dataset& d) {
  if (d.empty()) return 0.0;
  double ones = 0.0;
  for (const auto& s : d) ones += s.label == 1.0 ? 1.0 : 0.0;
  return ones / static_cast<double>(d.size());
}

}  // namespace reupload
