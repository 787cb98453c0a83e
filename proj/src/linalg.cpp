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

#include "reupload/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>
#include <vector>

#include "reupload/pauli.hpp"

namespace reupload {

bool is_hermitian(const ComplexMatrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

bool is_unitary(const ComplexMatrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  const ComplexMatrix eye = ComplexMatrix::Identity(m.rows(), m.cols());
  return (m.adjoint() * m - eye).cwiseAbs().maxCoeff() <= tol;
}

namespace {

double off_diagonal_norm(const ComplexMatrix& a) {
  double sum = 0.0;
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      if (i != j) sum += std::norm(a(i, j));
    }
  }
  return std::sqrt(sum);
}

}  // namespace

HermitianEig hermitian_eig(const ComplexMatrix& h) {
  if (h.rows() != h.cols() || h.rows() == 0) {
    throw std::invalid_argument("hermitian_eig: matrix must be square and non-empty");
  }
  const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
  if (!is_hermitian(h, kHermitianTol * scale)) {
    throw std::invalid_argument("hermitian_eig: matrix is not Hermitian");
  }
  const Eigen::Index n = h.rows();
  ComplexMatrix a = 0.5 * (h + h.adjoint());
  ComplexMatrix v = ComplexMatrix::Identity(n, n);
  const double target = 1e-13 * std::max(1.0, a.norm());

  constexpr int kMaxSweeps = 100;
  for (int sweep = 0; sweep < kMaxSweeps && off_diagonal_norm(a) > target; ++sweep) {
    for (Eigen::Index p = 0; p < n - 1; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const Complex apq = a(p, q);
        const double mag = std::abs(apq);
        if (mag == 0.0) continue;
        // Rotate the phase of a_pq onto the real axis, then apply a real Jacobi rotation.
        const Complex phase = apq / mag;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double theta = (aqq - app) / (2.0 * mag);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const Complex eq = std::conj(phase);

        for (Eigen::Index k = 0; k < n; ++k) {
          const Complex akp = a(k, p);
          const Complex akq = a(k, q);
          a(k, p) = c * akp - s * eq * akq;
          a(k, q) = s * akp + c * eq * akq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const Complex apk = a(p, k);
          const Complex aqk = a(q, k);
          a(p, k) = c * apk - s * phase * aqk;
          a(q, k) = s * apk + c * phase * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        for (Eigen::Index k = 0; k < n; ++k) {
          const Complex vkp = v(k, p);
          const Complex vkq = v(k, q);
          v(k, p) = c * vkp - s * eq * vkq;
          v(k, q) = s * vkp + c * eq * vkq;
        }
      }
    }
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index i, Eigen::Index j) {
    return a(i, i).real() > a(j, j).real();
  });
  HermitianEig out{Eigen::VectorXd(n), ComplexMatrix(n, n)};
  for (Eigen::Index k = 0; k < n; ++k) {
    out.values(k) = a(order[static_cast<std::size_t>(k)], order[static_cast<std::size_t>(k)]).real();
    out.vectors.col(k) = v.col(order[static_cast<std::size_t>(k)]);
  }
  return out;
}

HermitianGenerator::HermitianGenerator(int n_qubits)
    : HermitianGenerator(n_qubits, Eigen::VectorXd::Zero(static_cast<Eigen::Index>(pauli_count(n_qubits)) - 1)) {}

HermitianGenerator::HermitianGenerator(int n_qubits, Eigen::VectorXd coeffs)
    : n_qubits_(n_qubits), coeffs_(std::move(coeffs)) {
  if (n_qubits < 1 || n_qubits > 5) {
    throw std::invalid_argument("HermitianGenerator: qubit count must be in 1..5");
  }
  if (coeffs_.size() != static_cast<Eigen::Index>(pauli_count(n_qubits)) - 1) {
    throw std::invalid_argument("HermitianGenerator: expected 4^n - 1 coefficients");
  }
}

ComplexMatrix HermitianGenerator::matrix() const {
  ComplexMatrix h = ComplexMatrix::Zero(dim(), dim());
  for (Eigen::Index k = 0; k < coeffs_.size(); ++k) {
    if (coeffs_(k) != 0.0) {
      add_scaled_pauli(h, static_cast<std::size_t>(k) + 1, n_qubits_, coeffs_(k));
    }
  }
  return h;
}

ComplexMatrix exp_i_hermitian(const ComplexMatrix& h) {
  const HermitianEig eig = hermitian_eig(h);
  ComplexVector phases(eig.values.size());
  for (Eigen::Index k = 0; k < phases.size(); ++k) {
    phases(k) = std::polar(1.0, eig.values(k));
  }
  return eig.vectors * phases.asDiagonal() * eig.vectors.adjoint();
}

ComplexMatrix exp_i_hermitian(const HermitianGenerator& h) { return exp_i_hermitian(h.matrix()); }

}  // namespace reupload
