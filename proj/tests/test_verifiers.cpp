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
#include "reupload/verifiers.hpp"

using namespace reupload;

TEST_CASE("corr of elementary operators") {
  CHECK(corr(ComplexMatrix::Identity(4, 4)).isZero(1e-15));
  CHECK(corr(purity_observable({0, 0, 0, 0, 0, 0})).isIdentity(1e-15));
  const CorrMatrix zz = corr(kron(pauli(3), pauli(3)));
  CorrMatrix expect = CorrMatrix::Zero();
  expect(2, 2) = 2.0;
  CHECK((zz - expect).cwiseAbs().maxCoeff() < 1e-15);
  CHECK_THROWS_AS(corr(ComplexMatrix::Identity(2, 2)), std::invalid_argument);
}

TEST_CASE("swap test returns the purity") {
  Rng rng(3);
  for (int n = 1; n <= 2; ++n) {
    const DensityMatrix rho = sample_mixed(n, rng);
    CHECK(std::abs(swap_test_purity(rho, 0, 0) - purity(rho)) < 1e-12);
  }
  const DensityMatrix pure = sample_haar_pure(1, rng);
  CHECK(std::abs(swap_test_purity(pure, 0, 0) - 1.0) < 1e-12);
  const DensityMatrix rho = sample_mixed(1, rng);
  CHECK(std::abs(swap_test_purity(rho, 100000, 5) - purity(rho)) < 0.02);
}

TEST_CASE("Kraus operators of the first upload") {
  Rng rng(11);
  const ComplexMatrix u = sample_special_unitary(4, rng);
  CHECK(std::abs(u.determinant() - Complex(1.0, 0.0)) < 1e-12);
  const auto k = first_upload_kraus(u);
  const ComplexMatrix sum = k[0].adjoint() * k[0] + k[1].adjoint() * k[1];
  CHECK((sum - ComplexMatrix::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-12);

  // Λ(X) = tr_2(U (|0⟩⟨0| ⊗ X) U†) computed directly from the unitary.
  const DensityMatrix tau = sample_bloch_ball(rng);
  ComplexMatrix zero = ComplexMatrix::Zero(2, 2);
  zero(0, 0) = 1.0;
  const ComplexMatrix joint = u * kron(zero, tau.matrix()) * u.adjoint();
  const ComplexMatrix direct = partial_trace(joint, 2, 2, Subsystem::A);
  const ComplexMatrix via_kraus = k[0] * tau.matrix() * k[0].adjoint() + k[1] * tau.matrix() * k[1].adjoint();
  CHECK((direct - via_kraus).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("certificate determinant vanishes") {
  const ComplexMatrix id = ComplexMatrix::Identity(4, 4);
  CHECK(std::abs(observation1_certificate(id, id, pauli(3)).det_t) < 1e-12);

  Rng rng(2);
  for (int t = 0; t < 50; ++t) {
    const ComplexMatrix u = sample_special_unitary(4, rng);
    const ComplexMatrix v = sample_special_unitary(4, rng);
    const ComplexMatrix o = pauli(1) * 0.3 - pauli(3) * 1.2 + pauli(0) * 0.5;
    const auto r = observation1_certificate(u, v, o);
    CHECK(std::abs(r.det_t) < 1e-9);
    const CorrMatrix c = corr(v.adjoint() * kron(o, pauli(0)) * v);
    CHECK((r.t - kraus_corr(first_upload_kraus(u)).transpose() * c).cwiseAbs().maxCoeff() < 1e-10);
  }

  ComplexMatrix bad = id;
  bad(0, 0) = 2.0;
  CHECK_THROWS_AS(observation1_certificate(bad, id, pauli(3)), std::invalid_argument);
}

TEST_CASE("purity observables") {
  const auto zero = purity_observable_det({0, 0, 0, 0, 0, 0});
  CHECK(std::abs(zero.det - 1.0) < 1e-12);
  const auto c1 = purity_observable_det({1, 0, 0, 0, 0, 0});
  CHECK(std::abs(c1.det - 2.0) < 1e-12);
  CHECK(c1.max_trace_deviation < 1e-12);

  const PurityObservableParams c{0.4, -1.1, 0.3, 0.9, -0.7, 0.2};
  const ComplexMatrix o = purity_observable(c);
  CHECK(is_hermitian(o, 1e-14));
  const auto r = purity_observable_det(c, 50, 4);
  CHECK(std::abs(r.det - r.closed_form) < 1e-10);
  CHECK(std::abs(r.closed_form - (1.0 + 0.16 + 0.16 + 1.21)) < 1e-12);
  CHECK(r.max_trace_deviation < 1e-10);
}

TEST_CASE("conjugated local Paulis under exp(i k.Sigma)") {
  for (int i = 1; i <= 3; ++i) CHECK(ksigma_corr(Eigen::Vector3d::Zero(), i).isZero(1e-14));

  const CorrMatrix m = ksigma_corr({std::numbers::pi / 8, 0, 0}, 3);
  CorrMatrix expect = CorrMatrix::Zero();
  expect(1, 0) = -std::sqrt(2.0);
  CHECK((m - expect).cwiseAbs().maxCoeff() < 1e-12);

  const Eigen::Vector3d k(0.3, -1.2, 2.1);
  for (int i = 1; i <= 3; ++i)
    CHECK((ksigma_corr(k, i) - ksigma_corr_closed_form(k, i)).cwiseAbs().maxCoeff() < 1e-10);
  const CorrMatrix combo = 0.7 * ksigma_corr(k, 1) - 1.3 * ksigma_corr(k, 2) + 2.2 * ksigma_corr(k, 3);
  CHECK(std::abs(combo.determinant()) < 1e-9);
  CHECK_THROWS_AS(ksigma_corr(k, 0), std::invalid_argument);
}

TEST_CASE("check registry") {
  for (const auto& name : check_names()) {
    const auto r = run_check(name, 20, 9);
    INFO(name);
    CHECK(r.pass);
    CHECK(r.trials == 20);
    CHECK(r.check_name == name);
  }
  CHECK(run_check("observation1", 1000, 1).pass);
  CHECK(default_trials("observation1") == 1000);
  CHECK_THROWS_WITH_AS(run_check("nope", 1, 1), doctest::Contains("swap-test"), std::invalid_argument);
}
