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

#include "reupload/poly.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <set>
#include <string>

#include "least_squares.hpp"

namespace reupload {
namespace {

constexpr double kSeedDelta = 1e-2;
constexpr double kProbeRadius = 0.9;
constexpr double kCheckTol = 1e-8;

CouplingSpec coupling_for(std::size_t alpha, int n_qubits, bool prefer_cnot) {
  if (n_qubits == 1) {
    if (alpha == 3 && prefer_cnot) return Cnot{};
    return ControlledPauliPair{1, static_cast<int>(alpha)};
  }
  return ControlledWord{PauliWord::from_index(alpha, n_qubits)};
}

bool all_cnot(const ReuploadModel& m) {
  return std::all_of(m.layers.begin(), m.layers.end(),
                     [](const LayerSpec& l) { return std::holds_alternative<Cnot>(l.coupling); });
}

// Largest exponent of every λ_α appearing in the basis.
std::map<std::size_t, int> max_exponents(const PolynomialSpec& basis) {
  std::map<std::size_t, int> out;
  for (const auto& m : basis.monomials)
    for (const auto& [alpha, e] : m.exps)
      if (e > 0) out[alpha] = std::max(out[alpha], e);
  return out;
}

std::vector<double> chebyshev_nodes(int count, double half_width) {
  std::vector<double> x(static_cast<std::size_t>(count));
  for (int j = 0; j < count; ++j) x[j] = half_width * std::cos(std::numbers::pi * (2 * j + 1) / (2.0 * count));
  return x;
}

// Probe inputs for coefficient extraction and the least-squares map from sampled outputs
// to basis coefficients.
class ProbeSet {
 public:
  ProbeSet(const PolynomialSpec& basis, bool use_psi_family) : n_qubits_(basis.n_qubits) {
    const auto kmax = max_exponents(basis);
    const std::size_t words = pauli_count(n_qubits_) - 1;
    const int m = static_cast<int>(kmax.size());
    std::vector<Eigen::VectorXd> lambdas;
    if (m == 0) {
      lambdas.push_back(Eigen::VectorXd::Zero(static_cast<Eigen::Index>(words)));
      lambdas.push_back(Eigen::VectorXd::Zero(static_cast<Eigen::Index>(words)));
    } else {
      const double r = n_qubits_ == 1 ? kProbeRadius / std::sqrt(static_cast<double>(m)) : kProbeRadius / m;
      std::vector<std::size_t> alphas;
      std::vector<std::vector<double>> nodes;
      for (const auto& [alpha, k] : kmax) {
        alphas.push_back(alpha);
        nodes.push_back(chebyshev_nodes(k + 1, r));
      }
      std::vector<std::size_t> idx(alphas.size(), 0);
      for (;;) {
        Eigen::VectorXd l = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(words));
        for (std::size_t a = 0; a < alphas.size(); ++a) l(static_cast<Eigen::Index>(alphas[a]) - 1) = nodes[a][idx[a]];
        lambdas.push_back(l);
        std::size_t a = 0;
        while (a < idx.size() && ++idx[a] == nodes[a].size()) idx[a++] = 0;
        if (a == idx.size()) break;
      }
      // Surplus rows that the fitted coefficients must also reproduce.
      Rng rng(0x9e3779b97f4a7c15ULL);
      std::uniform_real_distribution<double> u(-r, r);
      for (int c = 0; c < 3; ++c) {
        Eigen::VectorXd l = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(words));
        for (auto alpha : alphas) l(static_cast<Eigen::Index>(alpha) - 1) = u(rng);
        lambdas.push_back(l);
      }
    }

    for (const auto& l : lambdas) {
      Eigen::VectorXd lh(l.size() + 1);
      if (use_psi_family) {
        // ψ(t) realizes λ_Z = 2t² - 1 with λ_X = 2t√(1 - t²).
        lh = lambda_hat(psi_t(t_from_lambda(l(2))));
      } else {
        lh << 1.0, l;
        density_from_coeffs(PauliCoeffs{n_qubits_, l});
      }
      inputs_.push_back(lh);
    }

    design_.resize(static_cast<Eigen::Index>(inputs_.size()), static_cast<Eigen::Index>(basis.monomials.size()) + 1);
    for (std::size_t p = 0; p < inputs_.size(); ++p) {
      const Eigen::VectorXd lam = inputs_[p].tail(inputs_[p].size() - 1);
      design_(static_cast<Eigen::Index>(p), 0) = 1.0;
      for (std::size_t k = 0; k < basis.monomials.size(); ++k) {
        MonomialSpec unit = basis.monomials[k];
        unit.c = 1.0;
        design_(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(k) + 1) = unit.value(lam);
      }
    }
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design_);
    if (qr.rank() < design_.cols()) throw std::runtime_error("extract_coefficients: singular probe system");
    pinv_ = qr.solve(Eigen::MatrixXd::Identity(design_.rows(), design_.rows()));
  }

  const std::vector<Eigen::VectorXd>& inputs() const { return inputs_; }
  int n_qubits() const { return n_qubits_; }
  Eigen::VectorXd solve(const Eigen::VectorXd& values) const { return pinv_ * values; }
  double check_residual(const Eigen::VectorXd& values, const Eigen::VectorXd& coeffs) const {
    return (design_ * coeffs - values).lpNorm<Eigen::Infinity>();
  }

 private:
  int n_qubits_;
  std::vector<Eigen::VectorXd> inputs_;
  Eigen::MatrixXd design_;
  Eigen::MatrixXd pinv_;
};

Eigen::Matrix3d euler_rotation(double theta, double phi, double beta) {
  auto rz = [](double t) {
    Eigen::Matrix3d r;
    r << std::cos(t), -std::sin(t), 0, std::sin(t), std::cos(t), 0, 0, 0, 1;
    return r;
  };
  Eigen::Matrix3d ry;
  ry << std::cos(beta), 0, std::sin(beta), 0, 1, 0, -std::sin(beta), 0, std::cos(beta);
  return rz(theta) * ry * rz(phi);
}

// Outputs on a probe set for a fixed coupling schedule. The coupling's affine maps are
// computed once per probe; only the rotations change between evaluations.
class ScheduleEvaluator {
 public:
  ScheduleEvaluator(const std::vector<CouplingSpec>& schedule, const ProbeSet& probes, Eigen::Vector3d r0)
      : r0_(std::move(r0)) {
    for (const auto& c : schedule) {
      const LayerTransfer t(build_coupling(c, probes.n_qubits()), probes.n_qubits());
      std::vector<AffineBlochMap> per_probe;
      for (const auto& lh : probes.inputs()) per_probe.push_back(t.at(lh));
      maps_.push_back(std::move(per_probe));
    }
  }

  std::size_t depth() const { return maps_.size(); }

  Eigen::VectorXd values(const std::vector<Eigen::Matrix3d>& rot, const Eigen::Vector3d& w, double b) const {
    const std::size_t n_probe = maps_.front().size();
    Eigen::VectorXd out(static_cast<Eigen::Index>(n_probe));
    for (std::size_t p = 0; p < n_probe; ++p) {
      Eigen::Vector3d r = r0_;
      for (std::size_t l = 0; l < maps_.size(); ++l) r = maps_[l][p](rot[l] * r);
      out(static_cast<Eigen::Index>(p)) = w.dot(r) + b;
    }
    return out;
  }

 private:
  Eigen::Vector3d r0_;
  std::vector<std::vector<AffineBlochMap>> maps_;
};

Eigen::VectorXd target_in_basis(const PolynomialSpec& target, const PolynomialSpec& basis) {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(basis.monomials.size()) + 1);
  v(0) = target.c0;
  for (const auto& m : target.monomials) {
    std::map<std::size_t, int> key;
    for (const auto& [a, e] : m.exps)
      if (e > 0) key[a] = e;
    bool found = false;
    for (std::size_t k = 0; k < basis.monomials.size() && !found; ++k) {
      if (basis.monomials[k].exps == key) {
        v(static_cast<Eigen::Index>(k) + 1) += m.c;
        found = true;
      }
    }
    if (!found) throw std::invalid_argument("target monomial outside the schedule basis");
  }
  return v;
}

double coefficient_residual(const ReuploadModel& model, const PolynomialSpec& basis, const Eigen::VectorXd& v) {
  return (extract_coefficients(model, basis) - v).lpNorm<Eigen::Infinity>();
}

CompiledCircuit fit_univariate(const PolynomialSpec& target, std::size_t alpha, const FitOptions& opt) {
  int L = 0;
  for (const auto& m : target.monomials) L = std::max(L, m.degree());
  std::vector<double> v(static_cast<std::size_t>(L) + 1, 0.0);
  v[0] = target.c0;
  for (const auto& m : target.monomials) v[static_cast<std::size_t>(m.degree())] += m.c;

  CompiledCircuit out;
  out.model.n_qubits = target.n_qubits;
  if (L == 0) {
    out.model.layers.assign(1, LayerSpec{0.0, 0.0, 0.0, coupling_for(alpha, target.n_qubits, true)});
    out.model.w = Eigen::Vector3d::UnitY();
    out.model.b = target.c0;
    out.active_layers = {1};
    out.residual = 0.0;
    return out;
  }

  const CouplingSpec coupling = coupling_for(alpha, target.n_qubits, true);
  const PolynomialSpec basis = univariate_polynomial(std::vector<double>(v.size(), 1.0), alpha, target.n_qubits);
  const bool psi = target.n_qubits == 1 && alpha == 3;
  const ProbeSet probes(basis, psi);
  const ScheduleEvaluator eval(std::vector<CouplingSpec>(static_cast<std::size_t>(L), coupling), probes,
                               initial_bloch(InitialSignal::Plus));
  const Eigen::VectorXd vt = Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
  const Eigen::VectorXd scaled = vt * kSeedDelta;

  // x = (θ_1..θ_L, b) with w = e₂; the target is shrunk by Δ and restored through (w, b).
  const detail::ResidualFn residual = [&](const Eigen::VectorXd& x) {
    std::vector<Eigen::Matrix3d> rot;
    for (int l = 0; l < L; ++l) rot.push_back(euler_rotation(x(l), 0.0, 0.0));
    return Eigen::VectorXd(probes.solve(eval.values(rot, Eigen::Vector3d::UnitY(), x(L))) - scaled);
  };
  Eigen::VectorXd x0(L + 1);
  for (int l = 1; l <= L; ++l) x0(l - 1) = v[static_cast<std::size_t>(L + 1 - l)] * kSeedDelta;
  x0(L) = scaled(0);
  const auto fit = detail::gauss_newton(residual, x0, opt.max_iter, opt.tol * kSeedDelta);

  for (int l = 0; l < L; ++l) out.model.layers.push_back(LayerSpec{fit.x(l), 0.0, 0.0, coupling});
  out.model.w = Eigen::Vector3d::UnitY() / kSeedDelta;
  out.model.b = fit.x(L) / kSeedDelta;
  out.active_layers = {1};
  out.iterations = fit.iterations;
  out.residual = coefficient_residual(out.model, basis, vt);
  if (!(out.residual <= opt.tol)) {
    throw ConvergenceError("fit_coefficients: residual " + std::to_string(out.residual) + " above tolerance",
                           out.residual, out);
  }
  return out;
}

struct MultiState {
  Eigen::VectorXd x;  // (θ, φ, β) per layer, then w (or its direction), then b
  double residual = std::numeric_limits<double>::infinity();
};

CompiledCircuit fit_multivariate(const PolynomialSpec& target, const FitOptions& opt) {
  const auto schedule = schedule_layers(target);
  const int L = static_cast<int>(schedule.size());
  const PolynomialSpec basis = schedule_basis(target);
  const ProbeSet probes(basis, false);
  const ScheduleEvaluator eval(schedule, probes, initial_bloch(InitialSignal::Plus));
  const Eigen::VectorXd vt = target_in_basis(target, basis);

  auto rotations = [L](const Eigen::VectorXd& x) {
    std::vector<Eigen::Matrix3d> rot;
    for (int l = 0; l < L; ++l) rot.push_back(euler_rotation(x(3 * l), x(3 * l + 1), x(3 * l + 2)));
    return rot;
  };
  const detail::ResidualFn free_w = [&](const Eigen::VectorXd& x) {
    return Eigen::VectorXd(probes.solve(eval.values(rotations(x), x.segment<3>(3 * L), x(3 * L + 3))) - vt);
  };
  double norm_w = 1.0;
  const detail::ResidualFn fixed_w = [&](const Eigen::VectorXd& x) {
    const Eigen::Vector3d u = x.segment<3>(3 * L);
    return Eigen::VectorXd(probes.solve(eval.values(rotations(x), norm_w * u / u.norm(), x(3 * L + 3))) - vt);
  };

  auto to_circuit = [&](const Eigen::VectorXd& x, const Eigen::Vector3d& w) {
    CompiledCircuit c;
    c.model.n_qubits = target.n_qubits;
    for (int l = 0; l < L; ++l) c.model.layers.push_back(LayerSpec{x(3 * l), x(3 * l + 1), x(3 * l + 2), schedule[l]});
    c.model.w = w;
    c.model.b = x(3 * L + 3);
    c.active_layers = active_layers(target);
    return c;
  };

  MultiState best;
  int iterations = 0;
  Rng rng(opt.seed);
  std::normal_distribution<double> normal(0.0, 2.0);
  for (int k = 0; k < std::max(1, opt.restarts); ++k) {
    Eigen::VectorXd x0 = Eigen::VectorXd::Zero(3 * L + 4);
    if (k == 0) {
      // Δ seed: one small angle at the head of every monomial block, w = e₂/Δ.
      const auto heads = active_layers(target);
      for (std::size_t w = 0; w < heads.size(); ++w) x0(3 * (heads[w] - 1)) = target.monomials[w].c * kSeedDelta;
      x0(3 * L + 1) = 1.0 / kSeedDelta;
      x0(3 * L + 3) = target.c0;
    } else {
      for (auto& e : x0) e = normal(rng);
    }
    const auto fit = detail::levenberg_marquardt(free_w, x0, opt.max_iter, opt.tol);
    iterations += fit.iterations;
    const double res = fit.r.lpNorm<Eigen::Infinity>();
    if (res < best.residual) best = {fit.x, res};
    if (best.residual <= opt.tol) break;
  }

  Eigen::Vector3d w_best = best.x.segment<3>(3 * L);
  if (best.residual > opt.tol) {
    // Continuation: hold |w| fixed at growing values and refit from the previous optimum.
    norm_w = w_best.norm();
    Eigen::VectorXd x = best.x;
    while (norm_w * 4 <= opt.max_readout_norm && best.residual > opt.tol) {
      norm_w *= 4;
      const auto fit = detail::levenberg_marquardt(fixed_w, x, opt.max_iter, opt.tol);
      iterations += fit.iterations;
      x = fit.x;
      const double res = fit.r.lpNorm<Eigen::Infinity>();
      if (res < best.residual) {
        const Eigen::Vector3d u = x.segment<3>(3 * L);
        best = {x, res};
        w_best = norm_w * u / u.norm();
      }
    }
  }

  CompiledCircuit out = to_circuit(best.x, w_best);
  out.iterations = iterations;
  out.residual = coefficient_residual(out.model, basis, vt);
  if (!(out.residual <= opt.tol)) {
    throw ConvergenceError("fit_coefficients: residual " + std::to_string(out.residual) + " above tolerance",
                           out.residual, out);
  }
  return out;
}

}  // namespace

int MonomialSpec::degree() const {
  int d = 0;
  for (const auto& [alpha, e] : exps) d += e;
  return d;
}

double MonomialSpec::value(const Eigen::VectorXd& lambda) const {
  double v = c;
  for (const auto& [alpha, e] : exps) v *= std::pow(lambda(static_cast<Eigen::Index>(alpha) - 1), e);
  return v;
}

int PolynomialSpec::total_degree() const {
  int d = 0;
  for (const auto& m : monomials) d += m.degree();
  return d;
}

void PolynomialSpec::validate() const {
  if (n_qubits < 1 || n_qubits > 4) throw std::invalid_argument("polynomial: n_qubits must lie in 1..4");
  const std::size_t words = pauli_count(n_qubits);
  for (const auto& m : monomials) {
    if (m.degree() < 1) throw std::invalid_argument("polynomial: monomial without a positive exponent");
    for (const auto& [alpha, e] : m.exps) {
      if (alpha < 1 || alpha >= words) throw std::invalid_argument("polynomial: Pauli index out of range");
      if (e < 0) throw std::invalid_argument("polynomial: negative exponent");
    }
  }
}

double PolynomialSpec::operator()(const Eigen::VectorXd& lambda) const {
  double v = c0;
  for (const auto& m : monomials) v += m.value(lambda);
  return v;
}

Eigen::VectorXd PolynomialSpec::coefficients() const {
  Eigen::VectorXd v(static_cast<Eigen::Index>(monomials.size()) + 1);
  v(0) = c0;
  for (std::size_t k = 0; k < monomials.size(); ++k) v(static_cast<Eigen::Index>(k) + 1) = monomials[k].c;
  return v;
}

std::optional<std::size_t> PolynomialSpec::univariate_alpha() const {
  std::optional<std::size_t> alpha;
  for (const auto& m : monomials) {
    for (const auto& [a, e] : m.exps) {
      if (e == 0) continue;
      if (alpha && *alpha != a) return std::nullopt;
      alpha = a;
    }
  }
  return alpha;
}

PolynomialSpec univariate_polynomial(const std::vector<double>& v, std::size_t alpha, int n_qubits) {
  if (v.empty()) throw std::invalid_argument("univariate_polynomial: empty coefficient vector");
  PolynomialSpec p;
  p.n_qubits = n_qubits;
  p.c0 = v[0];
  for (std::size_t k = 1; k < v.size(); ++k) p.monomials.push_back({v[k], {{alpha, static_cast<int>(k)}}});
  p.validate();
  return p;
}

PolynomialSpec schedule_basis(const PolynomialSpec& p) {
  p.validate();
  std::map<std::size_t, int> total;
  for (const auto& m : p.monomials)
    for (const auto& [a, e] : m.exps)
      if (e > 0) total[a] += e;
  PolynomialSpec basis;
  basis.n_qubits = p.n_qubits;
  std::vector<std::size_t> alphas;
  std::vector<int> caps;
  for (const auto& [a, e] : total) {
    alphas.push_back(a);
    caps.push_back(e);
  }
  std::vector<int> k(alphas.size(), 0);
  for (;;) {
    std::size_t i = 0;
    while (i < k.size() && ++k[i] > caps[i]) k[i++] = 0;
    if (i == k.size()) break;
    MonomialSpec m;
    for (std::size_t j = 0; j < alphas.size(); ++j)
      if (k[j] > 0) m.exps[alphas[j]] = k[j];
    basis.monomials.push_back(m);
  }
  std::stable_sort(basis.monomials.begin(), basis.monomials.end(),
                   [](const MonomialSpec& a, const MonomialSpec& b) { return a.degree() < b.degree(); });
  return basis;
}

std::vector<CouplingSpec> schedule_layers(const PolynomialSpec& p) {
  p.validate();
  if (p.total_degree() < 1) throw std::invalid_argument("schedule_layers: polynomial has degree zero");
  const auto uni = p.univariate_alpha();
  const bool cnot = p.n_qubits == 1 && uni && *uni == 3;
  std::vector<CouplingSpec> out;
  for (const auto& m : p.monomials)
    for (const auto& [alpha, e] : m.exps)
      for (int k = 0; k < e; ++k) out.push_back(coupling_for(alpha, p.n_qubits, cnot));
  return out;
}

std::vector<int> active_layers(const PolynomialSpec& p) {
  std::vector<int> out;
  int s = 0;
  for (const auto& m : p.monomials) {
    out.push_back(s + 1);
    s += m.degree();
  }
  return out;
}

CompiledCircuit compile_univariate_delta(const Eigen::VectorXd& v, double delta, std::size_t alpha, int n_qubits) {
  if (!(delta > 0.0) || delta > 0.1) throw std::invalid_argument("compile_univariate_delta: delta must lie in (0, 0.1]");
  if (v.size() < 2) throw std::invalid_argument("compile_univariate_delta: need at least one layer");
  const int L = static_cast<int>(v.size()) - 1;
  CompiledCircuit out;
  out.model.n_qubits = n_qubits;
  const CouplingSpec coupling = coupling_for(alpha, n_qubits, true);
  for (int l = 1; l <= L; ++l) out.model.layers.push_back(LayerSpec{v(L + 1 - l) * delta, 0.0, 0.0, coupling});
  out.model.w = Eigen::Vector3d::UnitY() / delta;
  out.model.b = v(0);
  out.delta = delta;
  for (int l = 1; l <= L; ++l) out.active_layers.push_back(l);
  return out;
}

Eigen::VectorXd extract_coefficients(const ReuploadModel& model, const PolynomialSpec& basis) {
  const auto uni = basis.univariate_alpha();
  const bool psi = model.n_qubits == 1 && all_cnot(model) && (!uni || *uni == 3);
  if (basis.n_qubits != model.n_qubits) throw std::invalid_argument("extract_coefficients: qubit count mismatch");
  const ProbeSet probes(basis, psi);
  const TransferModel fast(model);
  Eigen::VectorXd values(static_cast<Eigen::Index>(probes.inputs().size()));
  for (std::size_t p = 0; p < probes.inputs().size(); ++p) values(static_cast<Eigen::Index>(p)) = fast.f(probes.inputs()[p]);
  const Eigen::VectorXd coeffs = probes.solve(values);
  const double check = probes.check_residual(values, coeffs);
  if (!(check <= kCheckTol)) {
    throw std::runtime_error("extract_coefficients: probe residual " + std::to_string(check) +
                             " exceeds 1e-8; the model schedule does not match the basis");
  }
  return coeffs;
}

Eigen::MatrixXd jacobian_theta0(int L) {
  if (L < 1) throw std::invalid_argument("jacobian_theta0: L must be at least 1");
  const PolynomialSpec basis = univariate_polynomial(std::vector<double>(static_cast<std::size_t>(L) + 1, 1.0));
  auto coeffs = [&](const Eigen::VectorXd& p) {
    ReuploadModel m;
    for (int l = 0; l < L; ++l) m.layers.push_back(LayerSpec{p(l), 0.0, 0.0, Cnot{}});
    m.w = p.segment<3>(L);
    m.b = p(L + 3);
    return extract_coefficients(m, basis);
  };
  Eigen::VectorXd p0 = Eigen::VectorXd::Zero(L + 4);
  p0(L + 1) = 1.0;
  const double h = 1e-5;
  Eigen::MatrixXd j(L + 1, L + 4);
  for (int k = 0; k < L + 4; ++k) {
    Eigen::VectorXd up = p0, down = p0;
    up(k) += h;
    down(k) -= h;
    j.col(k) = (coeffs(up) - coeffs(down)) / (2 * h);
  }
  return j;
}

CompiledCircuit fit_coefficients(const PolynomialSpec& target, const FitOptions& options) {
  target.validate();
  const auto uni = target.univariate_alpha();
  if (target.monomials.empty() || uni) return fit_univariate(target, uni.value_or(3), options);
  return fit_multivariate(target, options);
}

CompiledCircuit fit_coefficients(const PolynomialSpec& target, int max_iter, double tol) {
  FitOptions o;
  o.max_iter = max_iter;
  o.tol = tol;
  return fit_coefficients(target, o);
}

}  // namespace reupload
