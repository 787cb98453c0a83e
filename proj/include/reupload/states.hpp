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

#include <optional>
#include <random>
#include <string>

#include <Eigen/Dense>

#include "reupload/linalg.hpp"
#include "reupload/pauli.hpp"

namespace reupload {

using Rng = std::mt19937_64;

inline constexpr double kStateTol = 1e-10;

/// Validated density operator on n qubits: Hermitian, unit trace, PSD (all within 1e-10).
class DensityMatrix {
 public:
  DensityMatrix() = default;

  /// Validates the invariants and throws std::invalid_argument when any is violated.
  static DensityMatrix from_matrix(ComplexMatrix m);
  static DensityMatrix pure(const ComplexVector& psi);
  static DensityMatrix maximally_mixed(int n_qubits);

  int n_qubits() const { return n_qubits_; }
  Eigen::Index dim() const { return m_.rows(); }
  const ComplexMatrix& matrix() const { return m_; }

 private:
  friend DensityMatrix assume_density(ComplexMatrix m);
  DensityMatrix(int n, ComplexMatrix m) : n_qubits_(n), m_(std::move(m)) {}

  int n_qubits_ = 0;
  ComplexMatrix m_;
};

/// Wraps an operator produced by a CPTP map without re-running the PSD check.
/// The caller guarantees the invariants; only shape and trace are checked.
DensityMatrix assume_density(ComplexMatrix m);

/// Generalized Bloch coordinates λ_α = tr(ρ W_α), α = 1 .. 4^n - 1 (stored at lambda(α - 1)).
struct PauliCoeffs {
  int n_qubits = 1;
  Eigen::VectorXd lambda;

  double operator[](std::size_t alpha) const { return lambda(static_cast<Eigen::Index>(alpha) - 1); }
  double& operator[](std::size_t alpha) { return lambda(static_cast<Eigen::Index>(alpha) - 1); }
};

PauliCoeffs pauli_coeffs(const DensityMatrix& rho);
/// Inverse of pauli_coeffs. Throws std::domain_error for non-physical coefficients.
DensityMatrix density_from_coeffs(const PauliCoeffs& c);

/// Bloch vector (r1, r2, r3) of a single-qubit state.
Eigen::Vector3d bloch_vector(const DensityMatrix& rho);
Eigen::Vector3d bloch_vector(const ComplexMatrix& tau);
DensityMatrix from_bloch(const Eigen::Vector3d& r);

double purity(const DensityMatrix& rho);

/// Rényi-2 entropy of the first qubit of a pure two-qubit state, natural log, evaluated as
/// -ln tr((ρ⊗ρ) S_A). Throws std::invalid_argument for mixed input (purity below 1 - 1e-8).
double renyi2_entropy(const DensityMatrix& psi);
/// Same quantity through the reduced state: -ln tr(ρ_A²).
double renyi2_entropy_reduced(const DensityMatrix& psi);
/// The local swap S_A exchanging the first qubits of two 2-qubit copies (16×16).
ComplexMatrix local_swap_first_qubit();

/// |ψ(t)⟩ = t|0⟩ + √(1-t²)|1⟩ for 0 < t < 1.
DensityMatrix psi_t(double t);
/// Inverse of λ = 2t² - 1 for the ψ(t) family.
double t_from_lambda(double lambda);

DensityMatrix sample_haar_pure(int n_qubits, Rng& rng);
DensityMatrix sample_bloch_ball(Rng& rng);
DensityMatrix sample_bloch_sphere(Rng& rng);
/// Mixed state from a Ginibre matrix G: ρ = GG†/tr(GG†).
DensityMatrix sample_mixed(int n_qubits, Rng& rng);
/// Haar-random unitary: QR of a complex Gaussian matrix with the phases of diag(R) removed.
ComplexMatrix sample_haar_unitary(Eigen::Index dim, Rng& rng);

/// One dataset element.
struct LabeledState {
  DensityMatrix state;
  double label = 0.0;
  std::optional<std::pair<std::string, double>> meta;
};

}  // namespace reupload
