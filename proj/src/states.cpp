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

#include "reupload/states.hpp"

#include <cmath>
#include <stdexcept>

namespace reupload {

namespace {

int qubits_for_dim(Eigen::Index dim) {
  int n = 0;
  while ((Eigen::Index{1} << n) < dim) ++n;
  if ((Eigen::Index{1} << n) != dim || n < 1) {
    throw std::invalid_argument("density matrix dimension must be 2^n with n >= 1");
  }
  return n;
}

Complex gaussian_complex(Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  const double re = normal(rng);
  const double im = normal(rng);
  return {re / std::sqrt(2.0), im / std::sqrt(2.0)};
}

}  // namespace

DensityMatrix DensityMatrix::from_matrix(ComplexMatrix m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("DensityMatrix: matrix is not square");
  const int n = qubits_for_dim(m.rows());
  if (!m.allFinite()) throw std::invalid_argument("DensityMatrix: non-finite entries");
  if (!is_hermitian(m, kStateTol)) throw std::invalid_argument("DensityMatrix: not Hermitian");
  if (std::abs(m.trace() - Complex(1.0, 0.0)) > kStateTol) {
    throw std::invalid_argument("DensityMatrix: trace differs from 1");
  }
  const ComplexMatrix herm = 0.5 * (m + m.adjoint());
  if (hermitian_eig(herm).values.minCoeff() < -kStateTol) {
    throw std::invalid_argument("DensityMatrix: negative eigenvalue");
  }
  return DensityMatrix(n, herm);
}

DensityMatrix DensityMatrix::pure(const ComplexVector& psi) {
  const double norm = psi.norm();
  if (norm == 0.0) throw std::invalid_argument("DensityMatrix::pure: zero vector");
  const ComplexVector v = psi / norm;
  return DensityMatrix(qubits_for_dim(v.size()), v * v.adjoint());
}

DensityMatrix DensityMatrix::maximally_mixed(int n_qubits) {
  const auto dim = Eigen::Index{1} << n_qubits;
  return DensityMatrix(n_qubits, ComplexMatrix::Identity(dim, dim) / static_cast<double>(dim));
}

DensityMatrix assume_density(ComplexMatrix m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("assume_density: matrix is not square");
  const int n = qubits_for_dim(m.rows());
  if (!m.allFinite() || std::abs(m.trace() - Complex(1.0, 0.0)) > 1e-8) {
    throw std::invalid_argument("assume_density: trace differs from 1");
  }
  return DensityMatrix(n, 0.5 * (m + m.adjoint()));
}

PauliCoeffs pauli_coeffs(const DensityMatrix& rho) {
  const ComplexVector traces = pauli_traces(rho.matrix());
  PauliCoeffs c{rho.n_qubits(), traces.tail(traces.size() - 1).real()};
  return c;
}

DensityMatrix density_from_coeffs(const PauliCoeffs& c) {
  if (c.n_qubits < 1 || c.lambda.size() != static_cast<Eigen::Index>(pauli_count(c.n_qubits)) - 1) {
    throw std::invalid_argument("density_from_coeffs: expected 4^n - 1 coefficients");
  }
  const auto dim = Eigen::Index{1} << c.n_qubits;
  ComplexMatrix m = ComplexMatrix::Identity(dim, dim);
  for (Eigen::Index k = 0; k < c.lambda.size(); ++k) {
    if (c.lambda(k) != 0.0) add_scaled_pauli(m, static_cast<std::size_t>(k) + 1, c.n_qubits, c.lambda(k));
  }
  m /= static_cast<double>(dim);
  if (hermitian_eig(m).values.minCoeff() < -kStateTol) {
    throw std::domain_error("density_from_coeffs: coefficients do not describe a positive operator");
  }
  return assume_density(std::move(m));
}

Eigen::Vector3d bloch_vector(const ComplexMatrix& tau) {
  if (tau.rows() != 2 || tau.cols() != 2) throw std::invalid_argument("bloch_vector: expected a qubit state");
  return {2.0 * tau(1, 0).real(), 2.0 * tau(1, 0).imag(), (tau(0, 0) - tau(1, 1)).real()};
}

Eigen::Vector3d bloch_vector(const DensityMatrix& rho) { return bloch_vector(rho.matrix()); }

DensityMatrix from_bloch(const Eigen::Vector3d& r) {
  PauliCoeffs c{1, r};
  return density_from_coeffs(c);
}

double purity(const DensityMatrix& rho) {
  // tr(ρ²) = Σ |ρ_ij|² for Hermitian ρ.
  return rho.matrix().squaredNorm();
}

ComplexMatrix local_swap_first_qubit() {
  // Basis |i j⟩|k l⟩ with index 8i + 4j + 2k + l; S_A maps it to |k j⟩|i l⟩.
  ComplexMatrix s = ComplexMatrix::Zero(16, 16);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) s(8 * k + 4 * j + 2 * i + l, 8 * i + 4 * j + 2 * k + l) = 1.0;
  return s;
}

namespace {

void require_pure_two_qubit(const DensityMatrix& psi) {
  if (psi.n_qubits() != 2) throw std::invalid_argument("renyi2_entropy: expected a two-qubit state");
  if (purity(psi) < 1.0 - 1e-8) throw std::invalid_argument("renyi2_entropy: state is not pure");
}

}  // namespace

double renyi2_entropy(const DensityMatrix& psi) {
  require_pure_two_qubit(psi);
  static const ComplexMatrix swap_a = local_swap_first_qubit();
  const ComplexMatrix doubled = kron(psi.matrix(), psi.matrix());
  return -std::log((doubled * swap_a).trace().real());
}

double renyi2_entropy_reduced(const DensityMatrix& psi) {
  require_pure_two_qubit(psi);
  const ComplexMatrix rho_a = partial_trace(psi.matrix(), 2, 2, Subsystem::A);
  return -std::log(rho_a.squaredNorm());
}

DensityMatrix psi_t(double t) {
  if (!(t > 0.0 && t < 1.0)) throw std::invalid_argument("psi_t: t must lie in (0, 1)");
  ComplexVector v(2);
  v << t, std::sqrt(1.0 - t * t);
  return DensityMatrix::pure(v);
}

double t_from_lambda(double lambda) {
  if (!(lambda > -1.0 && lambda < 1.0)) throw std::invalid_argument("t_from_lambda: λ must lie in (-1, 1)");
  return std::sqrt(0.5 * (lambda + 1.0));
}

DensityMatrix sample_haar_pure(int n_qubits, Rng& rng) {
  const auto dim = Eigen::Index{1} << n_qubits;
  ComplexVector v(dim);
  for (Eigen::Index k = 0; k < dim; ++k) v(k) = gaussian_complex(rng);
  return DensityMatrix::pure(v);
}

namespace {

Eigen::Vector3d random_direction(Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::Vector3d v;
  do {
    v = {normal(rng), normal(rng), normal(rng)};
  } while (v.norm() < 1e-12);
  return v.normalized();
}

}  // namespace

DensityMatrix sample_bloch_ball(Rng& rng) {
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  const Eigen::Vector3d dir = random_direction(rng);
  return from_bloch(std::cbrt(uniform(rng)) * dir);
}

DensityMatrix sample_bloch_sphere(Rng& rng) { return from_bloch(random_direction(rng)); }

DensityMatrix sample_mixed(int n_qubits, Rng& rng) {
  const auto dim = Eigen::Index{1} << n_qubits;
  ComplexMatrix g(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i)
    for (Eigen::Index j = 0; j < dim; ++j) g(i, j) = gaussian_complex(rng);
  ComplexMatrix rho = g * g.adjoint();
  rho /= rho.trace();
  return assume_density(std::move(rho));
}

ComplexMatrix sample_haar_unitary(Eigen::Index dim, Rng& rng) {
  ComplexMatrix z(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i)
    for (Eigen::Index j = 0; j < dim; ++j) z(i, j) = gaussian_complex(rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(z);
  const ComplexMatrix q = qr.householderQ();
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  ComplexVector phases(dim);
  for (Eigen::Index k = 0; k < dim; ++k) {
    const double mag = std::abs(r(k, k));
    phases(k) = mag > 0.0 ? r(k, k) / mag : Complex(1.0, 0.0);
  }
  return q * phases.asDiagonal();
}

}  // namespace reupload
