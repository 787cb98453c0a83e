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

#include <complex>
#include <cstddef>
#include <stdexcept>

#include <Eigen/Dense>

namespace reupload {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

// Module-wide tolerances for unitarity and Hermiticity assertions.
inline constexpr double kUnitaryTol = 1e-10;
inline constexpr double kHermitianTol = 1e-12;

/// Kronecker product a ⊗ b. The first operand is the most significant factor.
template <typename DerivedA, typename DerivedB>
Eigen::Matrix<typename DerivedA::Scalar, Eigen::Dynamic, Eigen::Dynamic>
kron(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  using Scalar = typename DerivedA::Scalar;
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> out(a.rows() * b.rows(),
                                                           a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

enum class Subsystem { A, B };

/// Partial trace of an operator on H_A ⊗ H_B, keeping the requested factor.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>
partial_trace(const Eigen::MatrixBase<Derived>& m, Eigen::Index dim_a, Eigen::Index dim_b,
              Subsystem keep) {
  if (dim_a <= 0 || dim_b <= 0 || m.rows() != dim_a * dim_b || m.cols() != dim_a * dim_b) {
    throw std::invalid_argument("partial_trace: operator is not (dim_a*dim_b)-square");
  }
  using Scalar = typename Derived::Scalar;
  if (keep == Subsystem::A) {
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> out =
        Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>::Zero(dim_a, dim_a);
    for (Eigen::Index i = 0; i < dim_a; ++i) {
      for (Eigen::Index j = 0; j < dim_a; ++j) {
        out(i, j) = m.block(i * dim_b, j * dim_b, dim_b, dim_b).trace();
      }
    }
    return out;
  }
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> out =
      Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>::Zero(dim_b, dim_b);
  for (Eigen::Index i = 0; i < dim_a; ++i) {
    out += m.block(i * dim_b, i * dim_b, dim_b, dim_b);
  }
  return out;
}

bool is_hermitian(const ComplexMatrix& m, double tol = kHermitianTol);
bool is_unitary(const ComplexMatrix& m, double tol = kUnitaryTol);

/// Eigen-decomposition h = P diag(values) P† with values sorted in descending order.
struct HermitianEig {
  Eigen::VectorXd values;
  ComplexMatrix vectors;
};

/// Cyclic complex Jacobi. Throws std::invalid_argument when h is not Hermitian within 1e-12.
HermitianEig hermitian_eig(const ComplexMatrix& h);

/// Traceless Hermitian operator on n qubits, stored as real coefficients over the
/// 4^n - 1 non-identity Pauli words (word index α = 1 .. 4^n - 1, base-4 letters).
class HermitianGenerator {
 public:
  HermitianGenerator() = default;
  explicit HermitianGenerator(int n_qubits);
  HermitianGenerator(int n_qubits, Eigen::VectorXd coeffs);

  int n_qubits() const { return n_qubits_; }
  Eigen::Index dim() const { return Eigen::Index{1} << n_qubits_; }
  const Eigen::VectorXd& coeffs() const { return coeffs_; }
  Eigen::VectorXd& coeffs() { return coeffs_; }

  /// Coefficient of Pauli word α (α ≥ 1).
  double operator[](std::size_t alpha) const { return coeffs_(static_cast<Eigen::Index>(alpha) - 1); }

  /// H = Σ_α coeffs_α W_α.
  ComplexMatrix matrix() const;

  HermitianGenerator operator-() const { return {n_qubits_, -coeffs_}; }

 private:
  int n_qubits_ = 0;
  Eigen::VectorXd coeffs_;
};

/// exp(iH) via the Jacobi eigenbasis: Σ_k e^{iλ_k} |v_k⟩⟨v_k|.
ComplexMatrix exp_i_hermitian(const ComplexMatrix& h);
ComplexMatrix exp_i_hermitian(const HermitianGenerator& h);

}  // namespace reupload
