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

#include <cstdint>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "reupload/linalg.hpp"
#include "reupload/pauli.hpp"
#include "reupload/states.hpp"

namespace reupload {

// Coupling unitaries act on A ⊗ B with the signal qubit A as the most significant factor.

/// CNOT_{B→A} = I ⊗ |0⟩⟨0| + X ⊗ |1⟩⟨1| (single-qubit input only).
struct Cnot {
  friend bool operator==(const Cnot&, const Cnot&) = default;
};

/// CU^{(i,j)} = I ⊗ |φ₊^{(j)}⟩⟨φ₊^{(j)}| + σ^{(i)} ⊗ |φ₋^{(j)}⟩⟨φ₋^{(j)}| (single-qubit input only).
struct ControlledPauliPair {
  int i = 1;
  int j = 3;
  friend bool operator==(const ControlledPauliPair&, const ControlledPauliPair&) = default;
};

/// CU^{(α)} = I ⊗ W_α⁺ + X ⊗ W_α⁻ for a non-identity word W_α on the input register.
struct ControlledWord {
  PauliWord word;
  friend bool operator==(const ControlledWord&, const ControlledWord&) = default;
};

/// exp(iH) for a generator H on all n + 1 qubits.
struct GeneralCoupling {
  HermitianGenerator generator;
};

using CouplingSpec = std::variant<Cnot, ControlledPauliPair, ControlledWord, GeneralCoupling>;

/// True for the controlled-Pauli families whose output depends on the rotation angles only
/// through their cosines and sines.
bool is_restricted(const CouplingSpec& c);

/// One entangle-and-reset layer. The signal qubit is first rotated by
/// R_z(theta) · R_y(beta) · R_z(phi) and then coupled to a fresh copy of the input.
/// With phi = beta = 0 this is the R_z(θ_l) layer of the restricted circuit.
struct LayerSpec {
  double theta = 0.0;
  double phi = 0.0;
  double beta = 0.0;
  CouplingSpec coupling = Cnot{};
};

enum class InitialSignal { Plus, Zero };

/// |+⟩ for the controlled-Pauli families and |0⟩ for general couplings.
InitialSignal default_initial_signal(const CouplingSpec& c);

struct ReuploadModel {
  int n_qubits = 1;
  std::vector<LayerSpec> layers;
  Eigen::Vector3d w = Eigen::Vector3d::UnitY();
  double b = 0.0;
  InitialSignal initial_signal = InitialSignal::Plus;

  int depth() const { return static_cast<int>(layers.size()); }
  /// Throws std::invalid_argument when the layer couplings do not match n_qubits or L < 1.
  void validate() const;
};

Eigen::Vector3d initial_bloch(InitialSignal s);

/// r ↦ m r + d, the exact action of one layer on the signal Bloch vector.
struct AffineBlochMap {
  Eigen::Matrix3d m = Eigen::Matrix3d::Identity();
  Eigen::Vector3d d = Eigen::Vector3d::Zero();

  Eigen::Vector3d operator()(const Eigen::Vector3d& r) const { return m * r + d; }
  /// The map "this, then next".
  AffineBlochMap then(const AffineBlochMap& next) const { return {next.m * m, next.m * d + next.d}; }
};

ComplexMatrix rotation_unitary(double theta, double phi = 0.0, double beta = 0.0);
ComplexMatrix rotation_unitary(const LayerSpec& layer);
/// SO(3) image of the layer's single-qubit rotation; for phi = beta = 0 this is the
/// z-rotation matrix [[cos θ, -sin θ, 0], [sin θ, cos θ, 0], [0, 0, 1]].
Eigen::Matrix3d bloch_rotation(const LayerSpec& layer);
Eigen::Matrix3d bloch_rotation(const ComplexMatrix& u);

struct ZyzAngles {
  double theta = 0.0;
  double beta = 0.0;
  double phi = 0.0;
};
/// Angles with R = R_z(theta) R_y(beta) R_z(phi) for a proper rotation R.
ZyzAngles zyz_from_rotation(const Eigen::Matrix3d& r);

/// Coupling unitary on 1 + n qubits. Throws std::invalid_argument on dimension mismatch.
ComplexMatrix build_coupling(const CouplingSpec& c, int n_qubits);
/// Full layer unitary: coupling · (rotation ⊗ I).
ComplexMatrix layer_unitary(const LayerSpec& layer, int n_qubits);

/// τ ↦ tr_B(U (τ ⊗ ρ) U†).
DensityMatrix apply_layer(const DensityMatrix& tau, const DensityMatrix& rho, const LayerSpec& layer);

/// M_ij = ½ tr[(σ_i ⊗ I) U (σ_j ⊗ ρ) U†], d_i = ½ tr[(σ_i ⊗ I) U (I ⊗ ρ) U†].
AffineBlochMap layer_affine_map(const LayerSpec& layer, const DensityMatrix& rho);
AffineBlochMap affine_map_from_unitary(const ComplexMatrix& u, const DensityMatrix& rho);

struct ModelOutput {
  Eigen::Vector3d r_final;
  double f = 0.0;
};

/// Runs the density-matrix simulation layer by layer from the model's initial signal.
ModelOutput run_model(const ReuploadModel& model, const DensityMatrix& rho);

/// The layer's affine map as a linear function of the input's Pauli coefficients.
/// Built once per unitary; evaluating the map for a new input costs 12·4^n multiply-adds.
class LayerTransfer {
 public:
  LayerTransfer() = default;
  LayerTransfer(const ComplexMatrix& layer_u, int n_qubits);

  /// lambda_hat = (1, λ_1, …, λ_{4^n - 1}).
  AffineBlochMap at(const Eigen::VectorXd& lambda_hat) const;

 private:
  // Row 4i + j holds the coefficients of ½tr[(σ_{i+1}⊗I)U(σ_j⊗W_β)U†]/d over β.
  Eigen::Matrix<double, 12, Eigen::Dynamic> coeffs_;
};

/// Prepends 1 to the Pauli coefficients, the layout LayerTransfer::at expects.
Eigen::VectorXd lambda_hat(const DensityMatrix& rho);

/// Model evaluation through precomputed layer transfers.
class TransferModel {
 public:
  explicit TransferModel(const ReuploadModel& model);

  const std::vector<LayerTransfer>& layers() const { return layers_; }
  Eigen::Vector3d r_final(const Eigen::VectorXd& lambda_hat) const;
  double f(const Eigen::VectorXd& lambda_hat) const;

 private:
  std::vector<LayerTransfer> layers_;
  Eigen::Vector3d r0_;
  Eigen::Vector3d w_;
  double b_ = 0.0;
};

/// Estimate of w·r + b for a qubit with Bloch vector r. shots = 0 is exact; otherwise each
/// axis is measured on shots/3 samples (remainder to the first axes) in its eigenbasis.
double readout(const Eigen::Vector3d& r, const Eigen::Vector3d& w, double b, int shots, Rng& rng);

/// tr(τ W) + b with W = Σ w_i σ^{(i)}, estimated like readout().
double expectation(const DensityMatrix& tau, const Eigen::Vector3d& w, double b, int shots,
                   std::uint64_t seed);

enum class TracePart { Real, Imag };

/// Hadamard-test estimate of Re or Im tr(ρU): ancilla in |0⟩, H (then S† for the imaginary
/// part), controlled-U, H, and ⟨Z⟩ on the ancilla. Throws std::invalid_argument for
/// non-unitary or mis-sized U.
double hadamard_test(const DensityMatrix& rho, const ComplexMatrix& u, TracePart part, int shots,
                     std::uint64_t seed);

}  // namespace reupload
