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

#include "reupload/verifiers.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace reupload {
namespace {

ComplexMatrix hadamard_gate() {
  ComplexMatrix h(2, 2);
  h << 1.0, 1.0, 1.0, -1.0;
  return h / std::sqrt(2.0);
}

ComplexMatrix swap_registers(Eigen::Index d) {
  ComplexMatrix s = ComplexMatrix::Zero(d * d, d * d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) s(j * d + i, i * d + j) = 1.0;
  return s;
}

ComplexMatrix random_qubit_observable(Rng& rng) {
  std::normal_distribution<double> n;
  ComplexMatrix o = n(rng) * pauli(0);
  for (int k = 1; k <= 3; ++k) o += n(rng) * pauli(k);
  return o;
}

VerificationReport make_report(const std::string& name, int trials, double violation, double tol) {
  return {name, trials, violation, tol, violation <= tol};
}

VerificationReport check_evolution_formula(int trials, std::uint64_t seed) {
  Rng rng(seed);
  std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    const int n = 1 + t % 2;
    std::uniform_int_distribution<std::size_t> pick(1, pauli_count(n) - 1);
    const DensityMatrix rho = sample_mixed(n, rng);
    const std::size_t alpha = pick(rng);
    const double theta = angle(rng);
    const DensityMatrix tau = sample_bloch_ball(rng);
    const LayerSpec layer{theta, 0.0, 0.0, ControlledWord{PauliWord::from_index(alpha, n)}};
    const Eigen::Vector3d got = bloch_vector(apply_layer(tau, rho, layer));
    const Eigen::Vector3d r = bloch_vector(tau);
    const Eigen::Vector3d rt(std::cos(theta) * r(0) - std::sin(theta) * r(1),
                             std::sin(theta) * r(0) + std::cos(theta) * r(1), r(2));
    const double lam = pauli_coeffs(rho)[alpha];
    worst = std::max(worst, (got - Eigen::Vector3d(rt(0), lam * rt(1), lam * rt(2))).lpNorm<Eigen::Infinity>());
  }
  return make_report("evolution-formula", trials, worst, 1e-10);
}

VerificationReport check_affine_map(int trials, std::uint64_t seed) {
  Rng rng(seed);
  std::normal_distribution<double> normal;
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    const int n = 1 + t % 2;
    Eigen::VectorXd c(static_cast<Eigen::Index>(pauli_count(n + 1)) - 1);
    for (auto& x : c) x = normal(rng);
    const LayerSpec layer{normal(rng), normal(rng), normal(rng), GeneralCoupling{HermitianGenerator(n + 1, c)}};
    const DensityMatrix rho = sample_mixed(n, rng);
    const DensityMatrix tau = sample_bloch_ball(rng);
    const AffineBlochMap map = layer_affine_map(layer, rho);
    const Eigen::Vector3d direct = bloch_vector(apply_layer(tau, rho, layer));
    worst = std::max(worst, (map(bloch_vector(tau)) - direct).lpNorm<Eigen::Infinity>());
  }
  return make_report("affine-map", trials, worst, 1e-10);
}

VerificationReport check_swap_test(int trials, std::uint64_t seed) {
  Rng rng(seed);
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    const DensityMatrix rho = sample_mixed(1 + t % 2, rng);
    worst = std::max(worst, std::abs(swap_test_purity(rho, 0, 0) - purity(rho)));
  }
  return make_report("swap-test", trials, worst, 1e-10);
}

VerificationReport check_hadamard_test(int trials, std::uint64_t seed) {
  Rng rng(seed);
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    const DensityMatrix rho = sample_mixed(1 + t % 3, rng);
    const ComplexMatrix u = sample_haar_unitary(rho.dim(), rng);
    const Complex exact = (rho.matrix() * u).trace();
    worst = std::max(worst, std::abs(hadamard_test(rho, u, TracePart::Real, 0, 0) - exact.real()));
    worst = std::max(worst, std::abs(hadamard_test(rho, u, TracePart::Imag, 0, 0) - exact.imag()));
  }
  return make_report("hadamard-test", trials, worst, 1e-10);
}

VerificationReport check_observation1(int trials, std::uint64_t seed) {
  Rng rng(seed);
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    const ComplexMatrix u = sample_special_unitary(4, rng);
    const ComplexMatrix v = sample_special_unitary(4, rng);
    worst = std::max(worst, std::abs(observation1_certificate(u, v, random_qubit_observable(rng)).det_t));
  }
  return make_report("observation1", trials, worst, 1e-9);
}

VerificationReport check_observation1_factorization(int trials, std::uint64_t seed) {
  Rng rng(seed);
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    const ComplexMatrix u = sample_special_unitary(4, rng);
    const ComplexMatrix v = sample_special_unitary(4, rng);
    const ComplexMatrix o = random_qubit_observable(rng);
    const CorrMatrix t_direct = observation1_certificate(u, v, o).t;
    const CorrMatrix c_tilde = kraus_corr(first_upload_kraus(u));
    const CorrMatrix c = corr(v.adjoint() * kron(o, pauli(0)) * v);
    worst = std::max(worst, (t_direct - c_tilde.transpose() * c).cwiseAbs().maxCoeff());
    worst = std::max(worst, std::abs(c.determinant()) * 0.1);
  }
  return make_report("observation1-factorization", trials, worst, 1e-10);
}

VerificationReport check_kraus_completeness(int trials, std::uint64_t seed) {
  Rng rng(seed);
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    const auto k = first_upload_kraus(sample_special_unitary(4, rng));
    const ComplexMatrix sum = k[0].adjoint() * k[0] + k[1].adjoint() * k[1];
    worst = std::max(worst, (sum - ComplexMatrix::Identity(2, 2)).cwiseAbs().maxCoeff());
  }
  return make_report("kraus-completeness", trials, worst, 1e-12);
}

VerificationReport check_purity_observable(int trials, std::uint64_t seed) {
  Rng rng(seed);
  std::normal_distribution<double> normal;
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    PurityObservableParams c;
    for (auto& x : c) x = normal(rng);
    const auto r = purity_observable_det(c, 50, seed + static_cast<std::uint64_t>(t));
    worst = std::max({worst, std::abs(r.det - r.closed_form), r.max_trace_deviation, 1.0 - r.det});
  }
  return make_report("purity-observable", trials, worst, 1e-10);
}

VerificationReport check_ksigma(int trials, std::uint64_t seed) {
  Rng rng(seed);
  std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
  std::normal_distribution<double> normal;
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    const Eigen::Vector3d k(angle(rng), angle(rng), angle(rng));
    CorrMatrix combo = CorrMatrix::Zero();
    for (int i = 1; i <= 3; ++i) {
      const CorrMatrix m = ksigma_corr(k, i);
      worst = std::max(worst, (m - ksigma_corr_closed_form(k, i)).cwiseAbs().maxCoeff());
      combo += normal(rng) * m;
    }
    // Determinants share the 1e-9 bound; scale them onto the 1e-10 closed-form tolerance.
    worst = std::max(worst, std::abs(combo.determinant()) * 0.1);
  }
  return make_report("ksigma-corr", trials, worst, 1e-10);
}

}  // namespace

Eigen::Matrix3cd corr_complex(const ComplexMatrix& m) {
  if (m.rows() != 4 || m.cols() != 4) throw std::invalid_argument("corr: expected a 4x4 operator");
  Eigen::Matrix3cd out;
  for (int i = 1; i <= 3; ++i)
    for (int j = 1; j <= 3; ++j) out(i - 1, j - 1) = 0.5 * (m * kron(pauli(i), pauli(j))).trace();
  return out;
}

CorrMatrix corr(const ComplexMatrix& m) { return corr_complex(m).real(); }

double swap_test_purity(const DensityMatrix& rho, int shots, std::uint64_t seed) {
  const Eigen::Index d = rho.dim();
  const Eigen::Index dd = d * d;
  const ComplexMatrix id = ComplexMatrix::Identity(dd, dd);
  ComplexMatrix cswap = ComplexMatrix::Identity(2 * dd, 2 * dd);
  cswap.bottomRightCorner(dd, dd) = swap_registers(d);
  const ComplexMatrix h = kron(hadamard_gate(), id);
  const ComplexMatrix g = h * cswap * h;
  ComplexMatrix zero = ComplexMatrix::Zero(2, 2);
  zero(0, 0) = 1.0;
  const ComplexMatrix out = g * kron(zero, kron(rho.matrix(), rho.matrix())) * g.adjoint();
  const double z = (out.topLeftCorner(dd, dd).trace() - out.bottomRightCorner(dd, dd).trace()).real();
  if (shots == 0) return z;
  if (shots < 0) throw std::invalid_argument("swap_test_purity: shots must be non-negative");
  Rng rng(seed);
  std::binomial_distribution<int> dist(shots, std::clamp(0.5 * (1.0 + z), 0.0, 1.0));
  return (2.0 * dist(rng) - shots) / shots;
}

std::array<ComplexMatrix, 2> first_upload_kraus(const ComplexMatrix& u) {
  if (u.rows() != 4 || u.cols() != 4) throw std::invalid_argument("first_upload_kraus: expected a 4x4 unitary");
  std::array<ComplexMatrix, 2> k;
  for (int b = 0; b < 2; ++b) {
    k[b] = ComplexMatrix(2, 2);
    for (int a = 0; a < 2; ++a)
      for (int in = 0; in < 2; ++in) k[b](a, in) = u(2 * a + b, in);
  }
  return k;
}

CorrMatrix kraus_corr(const std::array<ComplexMatrix, 2>& kraus) {
  CorrMatrix c;
  for (int i = 1; i <= 3; ++i) {
    ComplexMatrix image = ComplexMatrix::Zero(2, 2);
    for (const auto& k : kraus) image += k * pauli(i) * k.adjoint();
    for (int mu = 1; mu <= 3; ++mu) c(mu - 1, i - 1) = 0.5 * (pauli(mu) * image).trace().real();
  }
  return c;
}

Observation1Result observation1_certificate(const ComplexMatrix& u, const ComplexMatrix& v, const ComplexMatrix& o) {
  if (u.rows() != 4 || v.rows() != 4 || !is_unitary(u) || !is_unitary(v))
    throw std::invalid_argument("observation1_certificate: U and V must be 4x4 unitaries");
  if (o.rows() != 2 || !is_hermitian(o, 1e-10)) throw std::invalid_argument("observation1_certificate: O must be a Hermitian 2x2");
  const auto k = first_upload_kraus(u);
  const ComplexMatrix o_tilde = kron(o, pauli(0));
  ComplexMatrix sum = ComplexMatrix::Zero(4, 4);
  for (const auto& kk : k) {
    const ComplexMatrix j = v * kron(kk, pauli(0));
    sum += j.adjoint() * o_tilde * j;
  }
  Observation1Result r;
  r.t = corr(sum);
  r.det_t = r.t.determinant();
  return r;
}

ComplexMatrix purity_observable(const PurityObservableParams& c) {
  const Complex i(0.0, 1.0);
  ComplexMatrix o = swap_registers(2);
  // Indices 0..3 stand for e1..e4.
  o(1, 2) += c[0] * i;
  o(2, 1) -= c[0] * i;
  o(1, 1) += c[1];
  o(2, 2) -= c[1];
  const Complex a(c[2], c[3]);
  o(0, 1) += a;
  o(0, 2) -= a;
  o(1, 0) += std::conj(a);
  o(2, 0) -= std::conj(a);
  const Complex b(c[4], c[5]);
  o(1, 3) += b;
  o(2, 3) -= b;
  o(3, 1) += std::conj(b);
  o(3, 2) -= std::conj(b);
  return o;
}

PurityObservableCheck purity_observable_det(const PurityObservableParams& c, int samples, std::uint64_t seed) {
  const ComplexMatrix o = purity_observable(c);
  PurityObservableCheck r;
  r.det = corr(o).determinant();
  r.closed_form = 1.0 + c[0] * c[0] + (c[2] + c[4]) * (c[2] + c[4]) + (c[3] + c[5]) * (c[3] + c[5]);
  Rng rng(seed);
  for (int s = 0; s < samples; ++s) {
    const DensityMatrix rho = sample_mixed(1, rng);
    const Complex value = (kron(rho.matrix(), rho.matrix()) * o).trace();
    r.max_trace_deviation = std::max(r.max_trace_deviation, std::abs(value - purity(rho)));
  }
  return r;
}

CorrMatrix ksigma_corr(const Eigen::Vector3d& k, int i) {
  if (i < 1 || i > 3) throw std::invalid_argument("ksigma_corr: i must lie in 1..3");
  ComplexMatrix h = ComplexMatrix::Zero(4, 4);
  for (int a = 1; a <= 3; ++a) h += k(a - 1) * kron(pauli(a), pauli(a));
  const ComplexMatrix e = exp_i_hermitian(h);
  return corr(e.adjoint() * kron(pauli(i), pauli(0)) * e);
}

CorrMatrix ksigma_corr_closed_form(const Eigen::Vector3d& k, int i) {
  if (i < 1 || i > 3) throw std::invalid_argument("ksigma_corr_closed_form: i must lie in 1..3");
  CorrMatrix m = CorrMatrix::Zero();
  const double c1 = std::cos(2 * k(0)), s1 = std::sin(2 * k(0));
  const double c2 = std::cos(2 * k(1)), s2 = std::sin(2 * k(1));
  const double c3 = std::cos(2 * k(2)), s3 = std::sin(2 * k(2));
  switch (i) {
    case 1:
      m(1, 2) = 2 * c2 * s3;
      m(2, 1) = -2 * s2 * c3;
      break;
    case 2:
      m(0, 2) = -2 * c1 * s3;
      m(2, 0) = 2 * s1 * c3;
      break;
    default:
      m(0, 1) = 2 * c1 * s2;
      m(1, 0) = -2 * s1 * c2;
      break;
  }
  return m;
}

ComplexMatrix sample_special_unitary(Eigen::Index dim, Rng& rng) {
  ComplexMatrix u = sample_haar_unitary(dim, rng);
  const Complex det = u.determinant();
  return u * std::pow(det, -1.0 / static_cast<double>(dim));
}

std::vector<std::string> check_names() {
  return {"evolution-formula", "affine-map",         "swap-test",         "hadamard-test", "observation1",
          "observation1-factorization", "kraus-completeness", "purity-observable", "ksigma-corr"};
}

int default_trials(const std::string& check) {
  if (check == "observation1") return 1000;
  if (check == "swap-test" || check == "hadamard-test") return 100;
  return 200;
}

VerificationReport run_check(const std::string& check, int trials, std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("run_check: trials must be positive");
  if (check == "evolution-formula") return check_evolution_formula(trials, seed);
  if (check == "affine-map") return check_affine_map(trials, seed);
  if (check == "swap-test") return check_swap_test(trials, seed);
  if (check == "hadamard-test") return check_hadamard_test(trials, seed);
  if (check == "observation1") return check_observation1(trials, seed);
  if (check == "observation1-factorization") return check_observation1_factorization(trials, seed);
  if (check == "kraus-completeness") return check_kraus_completeness(trials, seed);
  if (check == "purity-observable") return check_purity_observable(trials, seed);
  if (check == "ksigma-corr") return check_ksigma(trials, seed);
  std::string names;
  for (const auto& n : check_names()) names += (names.empty() ? "" : ", ") + n;
  throw std::invalid_argument("unknown check '" + check + "'; valid checks: " + names);
}

}  // namespace reupload
