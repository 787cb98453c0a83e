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

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "reupload/channel.hpp"

namespace reupload {

/// c · Π_α λ_α^{e_α}. Exponents are keyed by Pauli index α ≥ 1.
struct MonomialSpec {
  double c = 1.0;
  std::map<std::size_t, int> exps;

  int degree() const;
  /// lambda holds λ_1 .. λ_{4^n - 1} at positions 0 .. 4^n - 2.
  double value(const Eigen::VectorXd& lambda) const;
};

/// c0 + Σ_ω c_ω Π_α λ_α^{e_ω(α)}.
struct PolynomialSpec {
  int n_qubits = 1;
  double c0 = 0.0;
  std::vector<MonomialSpec> monomials;

  /// Σ_ω Σ_α e_ω(α), the layer count of the monomial schedule.
  int total_degree() const;
  /// Throws std::invalid_argument for bad indices, negative or all-zero exponents.
  void validate() const;
  double operator()(const Eigen::VectorXd& lambda) const;
  /// (c0, c_1, …, c_Ω).
  Eigen::VectorXd coefficients() const;
  /// The shared index when every monomial is a power of one λ_α.
  std::optional<std::size_t> univariate_alpha() const;
};

/// Σ_k v_k λ_α^k with v_0 as the constant; zero coefficients are kept so the monomials form
/// the full power basis up to degree v.size() - 1.
PolynomialSpec univariate_polynomial(const std::vector<double>& v, std::size_t alpha = 3, int n_qubits = 1);

/// All monomials Π_α λ_α^{k_α} with 0 ≤ k_α ≤ Σ_ω e_ω(α), not all zero, with unit coefficients.
/// A circuit on the monomial schedule can only produce these terms.
PolynomialSpec schedule_basis(const PolynomialSpec& p);

/// One controlled-Pauli coupling per exponent unit: within monomial ω, e_ω(α) copies of the
/// α coupling, ascending in α; blocks follow the monomial order. CNOT stands for λ_Z when
/// n = 1 and the target is univariate in λ_Z, CU^{(1,α)} for other single-qubit words.
std::vector<CouplingSpec> schedule_layers(const PolynomialSpec& p);

/// 1-based index s_ω + 1 of the first layer of every monomial block.
std::vector<int> active_layers(const PolynomialSpec& p);

struct CompiledCircuit {
  ReuploadModel model;
  std::vector<int> active_layers;
  std::optional<double> delta;
  double residual = 0.0;
  int iterations = 0;
};

/// θ_l = v[L + 1 - l]·Δ for l = 1..L, w = e₂/Δ, b = v[0], on L = v.size() - 1 identical
/// layers coupled through λ_α. As Δ → 0 the output tends to Σ_k v[k] λ^k.
CompiledCircuit compile_univariate_delta(const Eigen::VectorXd& v, double delta, std::size_t alpha = 3,
                                         int n_qubits = 1);

/// Coefficients of the model output in the given basis, ordered (constant, monomials...).
/// The output is sampled on probe inputs (the ψ(t) family for CNOT circuits, otherwise
/// synthetic Pauli coefficients on a Chebyshev grid inside the physical region) and fitted by
/// least squares. Throws std::runtime_error when the probe system is rank deficient or a
/// surplus probe row misses by more than 1e-8.
Eigen::VectorXd extract_coefficients(const ReuploadModel& model, const PolynomialSpec& basis);

/// Central-difference Jacobian of the degree-L coefficient vector of the CNOT circuit at
/// θ = 0, w = e₂, b = 0, step 1e-5. Columns are ordered (θ_1..θ_L, w_1, w_2, w_3, b).
Eigen::MatrixXd jacobian_theta0(int L);

struct FitOptions {
  int max_iter = 400;
  double tol = 1e-10;
  /// Random restarts for targets that are not univariate.
  int restarts = 12;
  /// Largest readout norm tried while continuing in |w|.
  double max_readout_norm = 1e6;
  std::uint64_t seed = 1;
};

class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double best_residual, CompiledCircuit best)
      : std::runtime_error(what), best_residual_(best_residual), best_(std::move(best)) {}
  double best_residual() const { return best_residual_; }
  const CompiledCircuit& best() const { return best_; }

 private:
  double best_residual_;
  CompiledCircuit best_;
};

/// Finds circuit parameters whose coefficient vector matches the target within tol (∞-norm
/// over the schedule basis).
///
/// Univariate targets use L = degree identical layers and damped Gauss–Newton on (θ, b) from
/// the Δ = 10⁻² seed with w = e₂, followed by rescaling (w, b). Other targets run on the
/// monomial schedule with full single-qubit rotations in every layer and Levenberg–Marquardt
/// on (angles, w, b), then continue with growing |w|. Throws ConvergenceError.
CompiledCircuit fit_coefficients(const PolynomialSpec& target, const FitOptions& options);
CompiledCircuit fit_coefficients(const PolynomialSpec& target, int max_iter, double tol);

}  // namespace reupload
