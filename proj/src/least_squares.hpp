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

// Small dense least-squares solvers shared by the compiler and tests.

#include <functional>

#include <Eigen/Dense>

namespace reupload::detail {

using ResidualFn = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;

struct LsResult {
  Eigen::VectorXd x;
  Eigen::VectorXd r;
  int iterations = 0;
};

/// Central differences with a step scaled by max(1, |x_k|).
Eigen::MatrixXd fd_jacobian(const ResidualFn& f, const Eigen::VectorXd& x, double h);

/// Gauss–Newton with a fixed Levenberg term mu·I and step halving when the residual grows.
/// Stops once ‖r‖∞ ≤ tol or no step improves the residual.
LsResult gauss_newton(const ResidualFn& f, Eigen::VectorXd x, int max_iter, double tol, double mu = 1e-6);

/// Levenberg–Marquardt with Marquardt scaling and gain-ratio damping updates.
LsResult levenberg_marquardt(const ResidualFn& f, Eigen::VectorXd x, int max_iter, double tol);

}  // namespace reupload::detail
