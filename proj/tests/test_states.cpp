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

#include <cmath>
#include <numbers>

#include "doctest.h"
#include "reupload/linalg.hpp"
#include "reupload/states.hpp"

using namespace reupload;

TEST_CASE("pauli_coeffs of simple states") {
  ComplexVector zero = ComplexVector::Zero(2);
  zero(0) = 1;
  const auto c0 = pauli_coeffs(DensityMatrix::pure(zero));
  CHECK((c0.lambda - Eigen::Vector3d(0, 0, 1)).norm() < 1e-15);
  CHECK(pauli_coeffs(DensityMatrix::maximally_mixed(1)).lambda.norm() < 1e-15);

  for (double t : {0.2, 0.5, 0.9}) {
    const auto c = pauli_coeffs(psi_t(t));
    CHECK(c[1] == doctest::Approx(2 * t * std::sqrt(1 - t * t)).epsilon(1e-12));
    CHECK(std::abs(c[2]) < 1e-15);
    CHECK(c[3] == doctest::Approx(2 * t * t - 1).epsilon(1e-12));
  }
  CHECK(pauli_coeffs(psi_t(0.5))[3] == doctest::Approx(-0.5));
  CHECK(pauli_coeffs(psi_t(0.9))[3] == doctest::Approx(0.62));
  const auto plus = pauli_coeffs(psi_t(1 / std::numbers::sqrt2));
  CHECK((plus.lambda - Eigen::Vector3d(1, 0, 0)).norm() < 1e-12);
  CHECK_THROWS_AS(psi_t(0.0), std::invalid_argument);
  CHECK_THROWS_AS(psi_t(1.0), std::invalid_argument);
  CHECK(t_from_lambda(2 * 0.3 * 0.3 - 1) == doctest::Approx(0.3));
}

TEST_CASE("density_from_coeffs") {
  PauliCoeffs zero{1, Eigen::Vector3d::Zero()};
  CHECK((density_from_coeffs(zero).matrix() - 0.5 * ComplexMatrix::Identity(2, 2)).norm() < 1e-15);
  PauliCoeffs plus{1, Eigen::Vector3d(1, 0, 0)};
  CHECK((density_from_coeffs(plus).matrix() - 0.5 * ComplexMatrix::Ones(2, 2)).norm() < 1e-15);
  PauliCoeffs example{1, Eigen::Vector3d(0.7, 0.5, 0.3)};
  CHECK_NOTHROW(density_from_coeffs(example));
  CHECK(example.lambda.norm() < 1.0);
  PauliCoeffs bad{1, Eigen::Vector3d(1, 1, 0)};
  CHECK_THROWS_AS(density_from_coeffs(bad), std::domain_error);
}

TEST_CASE("coefficient round trip") {
  Rng rng(11);
  for (int n = 1; n <= 2; ++n) {
    for (int k = 0; k < 50; ++k) {
      const DensityMatrix rho = sample_mixed(n, rng);
      const DensityMatrix back = density_from_coeffs(pauli_coeffs(rho));
      CHECK((back.matrix() - rho.matrix()).norm() < 1e-10);
      CHECK(pauli_coeffs(rho).lambda.cwiseAbs().maxCoeff() <= 1.0 + 1e-12);
    }
  }
}

TEST_CASE("DensityMatrix validation") {
  CHECK_THROWS_AS(DensityMatrix::from_matrix(ComplexMatrix::Identity(2, 2)), std::invalid_argument);
  ComplexMatrix neg = ComplexMatrix::Zero(2, 2);
  neg(0, 0) = 1.5;
  neg(1, 1) = -0.5;
  CHECK_THROWS_AS(DensityMatrix::from_matrix(neg), std::invalid_argument);
  ComplexMatrix nonherm = 0.5 * ComplexMatrix::Identity(2, 2);
  nonherm(0, 1) = 0.1;
  CHECK_THROWS_AS(DensityMatrix::from_matrix(nonherm), std::invalid_argument);
  CHECK_THROWS_AS(DensityMatrix::from_matrix(ComplexMatrix::Identity(3, 3) / 3.0), std::invalid_argument);
}

TEST_CASE("purity") {
  Rng rng(12);
  CHECK(purity(sample_haar_pure(2, rng)) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(purity(DensityMatrix::maximally_mixed(1)) == doctest::Approx(0.5));
  for (int k = 0; k < 20; ++k) {
    const DensityMatrix rho = sample_bloch_ball(rng);
    const double r = bloch_vector(rho).norm();
    CHECK(std::abs(purity(rho) - 0.5 * (1 + r * r)) < 1e-12);
    const DensityMatrix m = sample_mixed(2, rng);
    CHECK(purity(m) >= 0.25 - 1e-10);
    CHECK(purity(m) <= 1.0 + 1e-10);
  }
}

TEST_CASE("Renyi-2 entropy") {
  ComplexVector prod = ComplexVector::Zero(4);
  prod(0) = prod(1) = 1 / std::numbers::sqrt2;  // |0⟩⊗|+⟩
  CHECK(std::abs(renyi2_entropy(DensityMatrix::pure(prod))) < 1e-12);
  ComplexVector bell = ComplexVector::Zero(4);
  bell(0) = bell(3) = 1 / std::numbers::sqrt2;
  CHECK(renyi2_entropy(DensityMatrix::pure(bell)) == doctest::Approx(std::log(2.0)).epsilon(1e-12));

  Rng rng(13);
  for (int k = 0; k < 50; ++k) {
    const DensityMatrix psi = sample_haar_pure(2, rng);
    CHECK(std::abs(renyi2_entropy(psi) - renyi2_entropy_reduced(psi)) < 1e-10);
  }
  CHECK_THROWS_AS(renyi2_entropy(DensityMatrix::maximally_mixed(2)), std::invalid_argument);
}

TEST_CASE("Haar pure sampling") {
  Rng rng(14);
  CHECK(purity(sample_haar_pure(1, rng)) == doctest::Approx(1.0).epsilon(1e-12));
  double mean = 0.0;
  const int n = 10000;
  for (int k = 0; k < n; ++k) {
    const DensityMatrix psi = sample_haar_pure(2, rng);
    mean += std::exp(-renyi2_entropy_reduced(psi));
  }
  mean /= n;
  // Haar average of tr(ρ_A²) is (d_A + d_B)/(d_A d_B + 1) = 0.8.
  CHECK(std::abs(mean - 0.8) < 0.01);

  Rng a(99), b(99);
  CHECK(sample_haar_pure(2, a).matrix() == sample_haar_pure(2, b).matrix());
}

TEST_CASE("Bloch ball sampling") {
  Rng rng(15);
  const double threshold = 0.5 * (1 + std::pow(2.0, -2.0 / 3.0));
  const int n = 100000;
  int above = 0;
  for (int k = 0; k < n; ++k) {
    const DensityMatrix rho = sample_bloch_ball(rng);
    CHECK_MESSAGE(bloch_vector(rho).norm() <= 1.0 + 1e-12, "sample outside the ball");
    if (purity(rho) >= threshold) ++above;
  }
  CHECK(std::abs(static_cast<double>(above) / n - 0.5) < 0.01);

  Rng a(7), b(7);
  CHECK(sample_bloch_ball(a).matrix() == sample_bloch_ball(b).matrix());
}

TEST_CASE("Haar unitary sampling") {
  Rng rng(16);
  for (Eigen::Index d : {2, 4, 8}) CHECK(is_unitary(sample_haar_unitary(d, rng)));
}
