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

#include <Eigen/Geometry>

#include "doctest.h"
#include "reupload/channel.hpp"

using namespace reupload;

namespace {

HermitianGenerator random_generator(int q, Rng& rng, double scale = 1.0) {
  std::normal_distribution<double> n(0.0, scale);
  Eigen::VectorXd c(static_cast<Eigen::Index>(pauli_count(q)) - 1);
  for (auto& v : c) v = n(rng);
  return {q, c};
}

LayerSpec random_general_layer(int n, Rng& rng) {
  std::uniform_real_distribution<double> ang(-std::numbers::pi, std::numbers::pi);
  return {ang(rng), ang(rng), ang(rng), GeneralCoupling{random_generator(n + 1, rng)}};
}

Eigen::Matrix3d rz3(double t) {
  Eigen::Matrix3d r;
  r << std::cos(t), -std::sin(t), 0, std::sin(t), std::cos(t), 0, 0, 0, 1;
  return r;
}

ComplexMatrix swap2() {
  ComplexMatrix s = ComplexMatrix::Zero(4, 4);
  s(0, 0) = s(3, 3) = s(1, 2) = s(2, 1) = 1;
  return s;
}

HermitianGenerator swap_generator() {
  // exp(-iπ/4 (XX + YY + ZZ)) = e^{-iπ/4} SWAP.
  Eigen::VectorXd c = Eigen::VectorXd::Zero(15);
  for (std::size_t a : {5, 10, 15}) c(static_cast<Eigen::Index>(a) - 1) = -std::numbers::pi / 4;
  return {2, c};
}

}  // namespace

TEST_CASE("coupling builders") {
  ComplexMatrix cnot = ComplexMatrix::Zero(4, 4);
  cnot(0, 0) = cnot(2, 2) = 1;  // I ⊗ |0⟩⟨0|
  cnot(1, 3) = cnot(3, 1) = 1;  // X ⊗ |1⟩⟨1|
  CHECK((build_coupling(Cnot{}, 1) - cnot).norm() < 1e-15);
  CHECK((build_coupling(ControlledPauliPair{1, 3}, 1) - cnot).norm() < 1e-15);
  CHECK((build_coupling(ControlledWord{PauliWord({3})}, 1) - cnot).norm() < 1e-15);
  CHECK((build_coupling(GeneralCoupling{HermitianGenerator(2)}, 1) - ComplexMatrix::Identity(4, 4)).norm() < 1e-14);
  CHECK(std::abs(std::abs((build_coupling(GeneralCoupling{swap_generator()}, 1).adjoint() * swap2()).trace()) - 4.0) < 1e-12);

  Rng rng(21);
  for (int i = 1; i <= 3; ++i)
    for (int j = 1; j <= 3; ++j) CHECK(is_unitary(build_coupling(ControlledPauliPair{i, j}, 1)));
  CHECK(is_unitary(build_coupling(ControlledWord{PauliWord({2, 1})}, 2)));
  CHECK(build_coupling(ControlledWord{PauliWord({2, 1, 3})}, 3).rows() == 16);

  CHECK_THROWS_AS(build_coupling(Cnot{}, 2), std::invalid_argument);
  CHECK_THROWS_AS(build_coupling(ControlledWord{PauliWord({3})}, 2), std::invalid_argument);
  CHECK_THROWS_AS(build_coupling(ControlledWord{PauliWord({0, 0})}, 2), std::invalid_argument);
  CHECK_THROWS_AS(build_coupling(GeneralCoupling{random_generator(2, rng)}, 2), std::invalid_argument);
}

TEST_CASE("single-qubit rotations") {
  const double t = 0.81;
  CHECK((bloch_rotation(LayerSpec{t, 0, 0, Cnot{}}) - rz3(t)).norm() < 1e-14);

  Rng rng(22);
  std::uniform_real_distribution<double> ang(-3, 3);
  for (int k = 0; k < 50; ++k) {
    const LayerSpec l{ang(rng), ang(rng), std::abs(ang(rng)), Cnot{}};
    const Eigen::Matrix3d r = bloch_rotation(l);
    CHECK((r * r.transpose() - Eigen::Matrix3d::Identity()).norm() < 1e-12);
    CHECK(r.determinant() == doctest::Approx(1.0));
    const ZyzAngles z = zyz_from_rotation(r);
    CHECK((bloch_rotation(LayerSpec{z.theta, z.phi, z.beta, Cnot{}}) - r).norm() < 1e-10);
  }
  for (double beta : {0.0, std::numbers::pi}) {
    const Eigen::Matrix3d r = bloch_rotation(LayerSpec{0.4, 1.1, beta, Cnot{}});
    const ZyzAngles z = zyz_from_rotation(r);
    CHECK((bloch_rotation(LayerSpec{z.theta, z.phi, z.beta, Cnot{}}) - r).norm() < 1e-10);
  }
}

TEST_CASE("CNOT layer scales y and z by lambda") {
  for (double t : {0.1, 0.4, 1 / std::numbers::sqrt2, 0.95}) {
    const double lambda = 2 * t * t - 1;
    const DensityMatrix rho = psi_t(t);

    const DensityMatrix plus = from_bloch(Eigen::Vector3d::UnitX());
    const auto out = apply_layer(plus, rho, LayerSpec{0.0, 0, 0, Cnot{}});
    CHECK((out.matrix() - 0.5 * ComplexMatrix::Ones(2, 2)).norm() < 1e-12);

    const Eigen::Vector3d r(0.3, -0.5, 0.6);
    const Eigen::Vector3d got = bloch_vector(apply_layer(from_bloch(r), rho, LayerSpec{0.0, 0, 0, Cnot{}}));
    CHECK((got - Eigen::Vector3d(r(0), lambda * r(1), lambda * r(2))).norm() < 1e-12);

    const double theta = 0.7;
    const auto map = layer_affine_map(LayerSpec{theta, 0, 0, Cnot{}}, rho);
    CHECK((map.m - Eigen::Vector3d(1, lambda, lambda).asDiagonal() * rz3(theta)).norm() < 1e-12);
    CHECK(map.d.norm() < 1e-12);
  }
}

TEST_CASE("general layers: identity and swap") {
  Rng rng(23);
  const DensityMatrix rho = sample_mixed(1, rng);
  const auto id_map = layer_affine_map(LayerSpec{0, 0, 0, GeneralCoupling{HermitianGenerator(2)}}, rho);
  CHECK((id_map.m - Eigen::Matrix3d::Identity()).norm() < 1e-14);
  CHECK(id_map.d.norm() < 1e-14);

  const LayerSpec swap{0, 0, 0, GeneralCoupling{swap_generator()}};
  const auto sw = layer_affine_map(swap, rho);
  CHECK(sw.m.norm() < 1e-12);
  CHECK((sw.d - bloch_vector(rho)).norm() < 1e-12);
  const DensityMatrix tau = sample_mixed(1, rng);
  CHECK((apply_layer(tau, rho, swap).matrix() - rho.matrix()).norm() < 1e-12);
}

TEST_CASE("controlled-word evolution formula") {
  Rng rng(24);
  std::uniform_real_distribution<double> ang(-std::numbers::pi, std::numbers::pi);
  for (int n = 1; n <= 3; ++n) {
    std::uniform_int_distribution<std::size_t> pick(1, pauli_count(n) - 1);
    for (int k = 0; k < 30; ++k) {
      const DensityMatrix rho = sample_mixed(n, rng);
      const std::size_t alpha = pick(rng);
      const double theta = ang(rng);
      const double lam = pauli_coeffs(rho)[alpha];
      const LayerSpec layer{theta, 0, 0, ControlledWord{PauliWord::from_index(alpha, n)}};
      const auto map = layer_affine_map(layer, rho);
      CHECK((map.m - Eigen::Vector3d(1, lam, lam).asDiagonal() * rz3(theta)).norm() < 1e-10);
      CHECK(map.d.norm() < 1e-10);

      const Eigen::Vector3d r = bloch_vector(sample_bloch_ball(rng));
      const Eigen::Vector3d rt = rz3(theta) * r;
      const Eigen::Vector3d got = bloch_vector(apply_layer(from_bloch(r), rho, layer));
      CHECK((got - Eigen::Vector3d(rt(0), lam * rt(1), lam * rt(2))).norm() < 1e-10);
    }
  }
}

TEST_CASE("affine map matches the channel and keeps the ball") {
  Rng rng(25);
  for (int n = 1; n <= 2; ++n) {
    for (int k = 0; k < 40; ++k) {
      const LayerSpec layer = random_general_layer(n, rng);
      const DensityMatrix rho = sample_mixed(n, rng);
      const auto map = layer_affine_map(layer, rho);
      const LayerTransfer transfer(layer_unitary(layer, n), n);
      const auto fast = transfer.at(lambda_hat(rho));
      CHECK((fast.m - map.m).norm() < 1e-12);
      CHECK((fast.d - map.d).norm() < 1e-12);
      for (int s = 0; s < 5; ++s) {
        const DensityMatrix tau = sample_bloch_ball(rng);
        const DensityMatrix out = apply_layer(tau, rho, layer);
        CHECK((map(bloch_vector(tau)) - bloch_vector(out)).norm() < 1e-10);
        CHECK(std::abs(out.matrix().trace() - 1.0) < 1e-12);
        CHECK(hermitian_eig(out.matrix()).values.minCoeff() >= -1e-10);
        CHECK(map(bloch_vector(tau)).norm() <= 1.0 + 1e-10);
      }
    }
  }
}

TEST_CASE("run_model") {
  SUBCASE("one-hot angles") {
    const int L = 4;
    for (int l = 1; l <= L; ++l) {
      ReuploadModel m;
      m.layers.assign(L, LayerSpec{});
      m.layers[l - 1].theta = 0.9;
      for (double t : {0.2, 0.6, 0.9}) {
        const double lambda = 2 * t * t - 1;
        const auto out = run_model(m, psi_t(t));
        CHECK(out.f == doctest::Approx(std::pow(lambda, L + 1 - l) * std::sin(0.9)).epsilon(1e-12));
      }
    }
  }
  SUBCASE("zero angles give the bias") {
    ReuploadModel m;
    m.layers.assign(3, LayerSpec{});
    m.b = 0.37;
    const auto out = run_model(m, psi_t(0.3));
    CHECK(out.f == doctest::Approx(0.37));
    CHECK((out.r_final - Eigen::Vector3d::UnitX()).norm() < 1e-12);
  }
  SUBCASE("two-layer trajectory with CU(1,1) and CU(1,2)") {
    const double a = std::sqrt(0.375);
    const Eigen::Vector3d first(0.5, a, a);
    const Eigen::Matrix3d r1 = Eigen::Quaterniond::FromTwoVectors(Eigen::Vector3d::UnitX(), first).toRotationMatrix();
    const Eigen::Matrix3d r2 = Eigen::AngleAxisd(std::numbers::pi / 2, Eigen::Vector3d::UnitX()).toRotationMatrix();
    const ZyzAngles z1 = zyz_from_rotation(r1), z2 = zyz_from_rotation(r2);
    ReuploadModel m;
    m.layers = {LayerSpec{z1.theta, z1.phi, z1.beta, ControlledPauliPair{1, 1}},
                LayerSpec{z2.theta, z2.phi, z2.beta, ControlledPauliPair{1, 2}}};
    const DensityMatrix rho = from_bloch(Eigen::Vector3d(0.7, 0.5, 0.3));
    const auto out = run_model(m, rho);
    CHECK((out.r_final - Eigen::Vector3d(0.5, -0.35 * a, 0.35 * a)).norm() < 1e-12);

    m.layers.resize(1);
    CHECK((run_model(m, rho).r_final - Eigen::Vector3d(0.5, 0.7 * a, 0.7 * a)).norm() < 1e-12);
  }
  SUBCASE("layers compose as affine maps and transfer model agrees") {
    Rng rng(26);
    for (int n = 1; n <= 2; ++n) {
      ReuploadModel m;
      m.n_qubits = n;
      m.initial_signal = InitialSignal::Zero;
      m.w = Eigen::Vector3d(0.3, -1.2, 0.8);
      m.b = 0.1;
      for (int l = 0; l < 4; ++l) m.layers.push_back(random_general_layer(n, rng));
      const DensityMatrix rho = sample_mixed(n, rng);
      AffineBlochMap total{Eigen::Matrix3d::Zero(), initial_bloch(m.initial_signal)};
      for (const auto& layer : m.layers) total = total.then(layer_affine_map(layer, rho));
      const auto out = run_model(m, rho);
      CHECK((out.r_final - total.d).norm() < 1e-10);
      CHECK(out.r_final.norm() <= 1.0 + 1e-10);
      const TransferModel fast(m);
      CHECK((fast.r_final(lambda_hat(rho)) - out.r_final).norm() < 1e-12);
      CHECK(fast.f(lambda_hat(rho)) == doctest::Approx(out.f).epsilon(1e-12));
    }
  }
  SUBCASE("deferred-measurement equivalence") {
    Rng rng(27);
    ReuploadModel m;
    m.initial_signal = InitialSignal::Zero;
    m.layers = {LayerSpec{0, 0, 0, GeneralCoupling{random_generator(2, rng)}},
                LayerSpec{0, 0, 0, GeneralCoupling{random_generator(2, rng)}}};
    const DensityMatrix rho = sample_mixed(1, rng);
    const ComplexMatrix u1 = layer_unitary(m.layers[0], 1), u2 = layer_unitary(m.layers[1], 1);
    const ComplexMatrix id2 = ComplexMatrix::Identity(2, 2);
    const ComplexMatrix swap12 = kron(id2, swap2());
    const ComplexMatrix big = swap12 * kron(u2, id2) * swap12 * kron(u1, id2);
    ComplexMatrix zero = ComplexMatrix::Zero(2, 2);
    zero(0, 0) = 1;
    const ComplexMatrix state = big * kron(zero, kron(rho.matrix(), rho.matrix())) * big.adjoint();
    const ComplexMatrix sig = partial_trace(state, 2, 4, Subsystem::A);
    CHECK((bloch_vector(sig) - run_model(m, rho).r_final).norm() < 1e-10);
  }
  SUBCASE("validation") {
    ReuploadModel m;
    CHECK_THROWS_AS(m.validate(), std::invalid_argument);
    m.layers.push_back(LayerSpec{});
    m.n_qubits = 2;
    CHECK_THROWS_AS(m.validate(), std::invalid_argument);
  }
}

TEST_CASE("expectation") {
  ComplexVector zero = ComplexVector::Zero(2);
  zero(0) = 1;
  CHECK(expectation(DensityMatrix::pure(zero), Eigen::Vector3d::UnitZ(), 0.0, 0, 1) == doctest::Approx(1.0));
  CHECK(expectation(DensityMatrix::maximally_mixed(1), Eigen::Vector3d(0.3, 2, -1), 0.25, 0, 1) ==
        doctest::Approx(0.25));

  Rng rng(28);
  for (int k = 0; k < 20; ++k) {
    const DensityMatrix tau = sample_bloch_ball(rng);
    const Eigen::Vector3d r = bloch_vector(tau);
    std::normal_distribution<double> n;
    const Eigen::Vector3d w(n(rng), n(rng), n(rng));
    const int shots = 10000;
    double var = 0;
    for (int a = 0; a < 3; ++a) var += w(a) * w(a) * (1 - r(a) * r(a)) / (shots / 3 + (a < shots % 3 ? 1 : 0));
    const double est = expectation(tau, w, 0.2, shots, 100 + k);
    CHECK(std::abs(est - (w.dot(r) + 0.2)) <= 4 * std::sqrt(var) + 1e-12);
  }
  CHECK(expectation(DensityMatrix::maximally_mixed(1), Eigen::Vector3d::UnitX(), 0, 300, 5) ==
        expectation(DensityMatrix::maximally_mixed(1), Eigen::Vector3d::UnitX(), 0, 300, 5));
}

TEST_CASE("Hadamard test") {
  ComplexVector zero = ComplexVector::Zero(2);
  zero(0) = 1;
  CHECK(hadamard_test(DensityMatrix::pure(zero), pauli(3), TracePart::Real, 0, 0) == doctest::Approx(1.0));
  CHECK(std::abs(hadamard_test(DensityMatrix::maximally_mixed(1), pauli(2), TracePart::Real, 0, 0)) < 1e-14);

  Rng rng(29);
  for (int n = 1; n <= 3; ++n) {
    for (int k = 0; k < 20; ++k) {
      const DensityMatrix rho = sample_mixed(n, rng);
      const ComplexMatrix u = sample_haar_unitary(rho.dim(), rng);
      const Complex t = (rho.matrix() * u).trace();
      CHECK(std::abs(hadamard_test(rho, u, TracePart::Real, 0, 0) - t.real()) < 1e-10);
      CHECK(std::abs(hadamard_test(rho, u, TracePart::Imag, 0, 0) - t.imag()) < 1e-10);
    }
  }
  const DensityMatrix rho = sample_mixed(1, rng);
  const ComplexMatrix u = sample_haar_unitary(2, rng);
  const double exact = (rho.matrix() * u).trace().real();
  const double est = hadamard_test(rho, u, TracePart::Real, 40000, 3);
  CHECK(std::abs(est - exact) < 4 * std::sqrt((1 - exact * exact) / 40000) + 1e-12);
  CHECK_THROWS_AS(hadamard_test(rho, 2.0 * u, TracePart::Real, 0, 0), std::invalid_argument);
  CHECK_THROWS_AS(hadamard_test(rho, ComplexMatrix::Identity(4, 4), TracePart::Real, 0, 0), std::invalid_argument);
}
