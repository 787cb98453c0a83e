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

#include "reupload/channel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace reupload {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require_single_qubit_input(int n, const char* what) {
  if (n != 1) throw std::invalid_argument(std::string(what) + " coupling needs a single-qubit input");
}

ComplexMatrix controlled(const ComplexMatrix& target, const ComplexMatrix& p_plus,
                         const ComplexMatrix& p_minus) {
  return kron(pauli(0), p_plus) + kron(target, p_minus);
}

int binomial(int n, double p, Rng& rng) {
  std::binomial_distribution<int> dist(n, std::clamp(p, 0.0, 1.0));
  return dist(rng);
}

}  // namespace

bool is_restricted(const CouplingSpec& c) { return !std::holds_alternative<GeneralCoupling>(c); }

InitialSignal default_initial_signal(const CouplingSpec& c) {
  return is_restricted(c) ? InitialSignal::Plus : InitialSignal::Zero;
}

Eigen::Vector3d initial_bloch(InitialSignal s) {
  return s == InitialSignal::Plus ? Eigen::Vector3d::UnitX() : Eigen::Vector3d::UnitZ();
}

void ReuploadModel::validate() const {
  if (n_qubits < 1) throw std::invalid_argument("model: n_qubits must be at least 1");
  if (layers.empty()) throw std::invalid_argument("model: at least one layer is required");
  for (const auto& layer : layers) {
    std::visit(Overloaded{
                   [&](const Cnot&) { require_single_qubit_input(n_qubits, "CNOT"); },
                   [&](const ControlledPauliPair& p) {
                     require_single_qubit_input(n_qubits, "CU_ij");
                     if (p.i < 1 || p.i > 3 || p.j < 1 || p.j > 3)
                       throw std::invalid_argument("model: CU_ij indices must lie in 1..3");
                   },
                   [&](const ControlledWord& w) {
                     if (w.word.n_qubits() != n_qubits || w.word.is_identity())
                       throw std::invalid_argument("model: CU_alpha word does not fit the input");
                   },
                   [&](const GeneralCoupling& g) {
                     if (g.generator.n_qubits() != n_qubits + 1)
                       throw std::invalid_argument("model: generator must act on n + 1 qubits");
                   },
               },
               layer.coupling);
  }
}

ComplexMatrix rotation_unitary(double theta, double phi, double beta) {
  const Complex i(0.0, 1.0);
  auto rz = [&](double a) {
    ComplexMatrix m = ComplexMatrix::Zero(2, 2);
    m(0, 0) = std::exp(-i * (a / 2));
    m(1, 1) = std::exp(i * (a / 2));
    return m;
  };
  ComplexMatrix ry(2, 2);
  ry << std::cos(beta / 2), -std::sin(beta / 2), std::sin(beta / 2), std::cos(beta / 2);
  return rz(theta) * ry * rz(phi);
}

ComplexMatrix rotation_unitary(const LayerSpec& layer) {
  return rotation_unitary(layer.theta, layer.phi, layer.beta);
}

Eigen::Matrix3d bloch_rotation(const ComplexMatrix& u) {
  Eigen::Matrix3d r;
  for (int j = 1; j <= 3; ++j) {
    const ComplexMatrix img = u * pauli(j) * u.adjoint();
    for (int i = 1; i <= 3; ++i) r(i - 1, j - 1) = 0.5 * (pauli(i) * img).trace().real();
  }
  return r;
}

Eigen::Matrix3d bloch_rotation(const LayerSpec& layer) { return bloch_rotation(rotation_unitary(layer)); }

ZyzAngles zyz_from_rotation(const Eigen::Matrix3d& r) {
  ZyzAngles a;
  a.beta = std::acos(std::clamp(r(2, 2), -1.0, 1.0));
  if (std::sin(a.beta) > 1e-12) {
    a.theta = std::atan2(r(1, 2), r(0, 2));
    a.phi = std::atan2(r(2, 1), -r(2, 0));
  } else if (r(2, 2) > 0) {
    a.theta = std::atan2(r(1, 0), r(0, 0));
  } else {
    a.theta = std::atan2(-r(1, 0), -r(0, 0));
  }
  return a;
}

ComplexMatrix build_coupling(const CouplingSpec& c, int n_qubits) {
  if (n_qubits < 1) throw std::invalid_argument("build_coupling: n_qubits must be at least 1");
  return std::visit(
      Overloaded{
          [&](const Cnot&) -> ComplexMatrix {
            require_single_qubit_input(n_qubits, "CNOT");
            const auto proj = pauli_projectors(PauliWord({3}));
            return controlled(pauli(1), proj.plus, proj.minus);
          },
          [&](const ControlledPauliPair& p) -> ComplexMatrix {
            require_single_qubit_input(n_qubits, "CU_ij");
            if (p.i < 1 || p.i > 3 || p.j < 1 || p.j > 3)
              throw std::invalid_argument("build_coupling: CU_ij indices must lie in 1..3");
            const auto proj = pauli_projectors(PauliWord({static_cast<std::uint8_t>(p.j)}));
            return controlled(pauli(p.i), proj.plus, proj.minus);
          },
          [&](const ControlledWord& w) -> ComplexMatrix {
            if (w.word.n_qubits() != n_qubits)
              throw std::invalid_argument("build_coupling: word length differs from n_qubits");
            const auto proj = pauli_projectors(w.word);
            return controlled(pauli(1), proj.plus, proj.minus);
          },
          [&](const GeneralCoupling& g) -> ComplexMatrix {
            if (g.generator.n_qubits() != n_qubits + 1)
              throw std::invalid_argument("build_coupling: generator must act on n + 1 qubits");
            return exp_i_hermitian(g.generator);
          },
      },
      c);
}

ComplexMatrix layer_unitary(const LayerSpec& layer, int n_qubits) {
  const Eigen::Index d = Eigen::Index{1} << n_qubits;
  ComplexMatrix u = build_coupling(layer.coupling, n_qubits);
  if (layer.theta == 0.0 && layer.phi == 0.0 && layer.beta == 0.0) return u;
  return u * kron(rotation_unitary(layer), ComplexMatrix::Identity(d, d));
}

DensityMatrix apply_layer(const DensityMatrix& tau, const DensityMatrix& rho, const LayerSpec& layer) {
  if (tau.n_qubits() != 1) throw std::invalid_argument("apply_layer: signal must be one qubit");
  const ComplexMatrix u = layer_unitary(layer, rho.n_qubits());
  const ComplexMatrix joint = u * kron(tau.matrix(), rho.matrix()) * u.adjoint();
  return assume_density(partial_trace(joint, 2, rho.dim(), Subsystem::A));
}

AffineBlochMap affine_map_from_unitary(const ComplexMatrix& u, const DensityMatrix& rho) {
  if (u.rows() != 2 * rho.dim() || !is_unitary(u))
    throw std::invalid_argument("affine_map_from_unitary: expected a unitary on A ⊗ B");
  AffineBlochMap map;
  for (int j = 0; j <= 3; ++j) {
    const ComplexMatrix out =
        partial_trace(u * kron(pauli(j), rho.matrix()) * u.adjoint(), 2, rho.dim(), Subsystem::A);
    // ½ tr(σ_i Y) for i = 1, 2, 3.
    const Eigen::Vector3d col(out(1, 0).real(), out(1, 0).imag(), 0.5 * (out(0, 0) - out(1, 1)).real());
    if (j == 0) {
      map.d = col;
    } else {
      map.m.col(j - 1) = col;
    }
  }
  return map;
}

AffineBlochMap layer_affine_map(const LayerSpec& layer, const DensityMatrix& rho) {
  return affine_map_from_unitary(layer_unitary(layer, rho.n_qubits()), rho);
}

ModelOutput run_model(const ReuploadModel& model, const DensityMatrix& rho) {
  model.validate();
  if (rho.n_qubits() != model.n_qubits) throw std::invalid_argument("run_model: input size mismatch");
  DensityMatrix tau = from_bloch(initial_bloch(model.initial_signal));
  for (const auto& layer : model.layers) tau = apply_layer(tau, rho, layer);
  ModelOutput out;
  out.r_final = bloch_vector(tau);
  out.f = model.w.dot(out.r_final) + model.b;
  return out;
}

LayerTransfer::LayerTransfer(const ComplexMatrix& layer_u, int n_qubits) {
  const Eigen::Index d = Eigen::Index{1} << n_qubits;
  const Eigen::Index n_words = static_cast<Eigen::Index>(pauli_count(n_qubits));
  if (layer_u.rows() != 2 * d || layer_u.cols() != 2 * d)
    throw std::invalid_argument("LayerTransfer: unitary does not act on A ⊗ B");
  coeffs_.resize(12, n_words);
  const ComplexMatrix id = ComplexMatrix::Identity(d, d);
  for (int i = 1; i <= 3; ++i) {
    const ComplexMatrix h = layer_u.adjoint() * kron(pauli(i), id) * layer_u;
    const ComplexVector t = pauli_traces(h);
    for (int j = 0; j <= 3; ++j) {
      coeffs_.row(4 * (i - 1) + j) = t.segment(j * n_words, n_words).real().transpose() / (2.0 * d);
    }
  }
}

AffineBlochMap LayerTransfer::at(const Eigen::VectorXd& lambda_hat) const {
  const Eigen::Matrix<double, 12, 1> v = coeffs_ * lambda_hat;
  AffineBlochMap map;
  for (int i = 0; i < 3; ++i) {
    map.d(i) = v(4 * i);
    for (int j = 1; j <= 3; ++j) map.m(i, j - 1) = v(4 * i + j);
  }
  return map;
}

Eigen::VectorXd lambda_hat(const DensityMatrix& rho) {
  const PauliCoeffs c = pauli_coeffs(rho);
  Eigen::VectorXd out(c.lambda.size() + 1);
  out << 1.0, c.lambda;
  return out;
}

TransferModel::TransferModel(const ReuploadModel& model)
    : r0_(initial_bloch(model.initial_signal)), w_(model.w), b_(model.b) {
  model.validate();
  layers_.reserve(model.layers.size());
  for (const auto& layer : model.layers) {
    layers_.emplace_back(layer_unitary(layer, model.n_qubits), model.n_qubits);
  }
}

Eigen::Vector3d TransferModel::r_final(const Eigen::VectorXd& lambda_hat) const {
  Eigen::Vector3d r = r0_;
  for (const auto& layer : layers_) r = layer.at(lambda_hat)(r);
  return r;
}

double TransferModel::f(const Eigen::VectorXd& lambda_hat) const { return w_.dot(r_final(lambda_hat)) + b_; }

double readout(const Eigen::Vector3d& r, const Eigen::Vector3d& w, double b, int shots, Rng& rng) {
  if (shots == 0) return w.dot(r) + b;
  if (shots < 3) throw std::invalid_argument("readout: need at least one shot per axis");
  double value = b;
  for (int k = 0; k < 3; ++k) {
    const int n_k = shots / 3 + (k < shots % 3 ? 1 : 0);
    const int plus = binomial(n_k, 0.5 * (1.0 + r(k)), rng);
    value += w(k) * (2.0 * plus - n_k) / n_k;
  }
  return value;
}

double expectation(const DensityMatrix& tau, const Eigen::Vector3d& w, double b, int shots,
                   std::uint64_t seed) {
  Rng rng(seed);
  return readout(bloch_vector(tau), w, b, shots, rng);
}

double hadamard_test(const DensityMatrix& rho, const ComplexMatrix& u, TracePart part, int shots,
                     std::uint64_t seed) {
  const Eigen::Index d = rho.dim();
  if (u.rows() != d || u.cols() != d) throw std::invalid_argument("hadamard_test: U has the wrong size");
  if (!is_unitary(u)) throw std::invalid_argument("hadamard_test: U is not unitary");
  const ComplexMatrix id = ComplexMatrix::Identity(d, d);
  ComplexMatrix h(2, 2);
  h << 1.0, 1.0, 1.0, -1.0;
  h /= std::sqrt(2.0);
  ComplexMatrix v = h;
  if (part == TracePart::Imag) {
    ComplexMatrix s_dag = ComplexMatrix::Identity(2, 2);
    s_dag(1, 1) = Complex(0.0, -1.0);
    v = s_dag * h;
  }
  ComplexMatrix cu = ComplexMatrix::Identity(2 * d, 2 * d);
  cu.bottomRightCorner(d, d) = u;
  const ComplexMatrix g = kron(h, id) * cu * kron(v, id);
  ComplexMatrix zero = ComplexMatrix::Zero(2, 2);
  zero(0, 0) = 1.0;
  const ComplexMatrix out = g * kron(zero, rho.matrix()) * g.adjoint();
  const double z = (out.topLeftCorner(d, d).trace() - out.bottomRightCorner(d, d).trace()).real();
  if (shots == 0) return z;
  if (shots < 0) throw std::invalid_argument("hadamard_test: shots must be non-negative");
  Rng rng(seed);
  const int zeros = binomial(shots, 0.5 * (1.0 + z), rng);
  return (2.0 * zeros - shots) / shots;
}

}  // namespace reupload
