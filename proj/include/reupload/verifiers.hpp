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

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "reupload/channel.hpp"
#include "reupload/states.hpp"

namespace reupload {

/// corr(M)_ij = ½ tr(M (σ_i ⊗ σ_j)), i, j = 1..3.
using CorrMatrix = Eigen::Matrix3d;

/// Real part of corr(M) for a 4×4 operator; for Hermitian M the imaginary part vanishes.
/// Throws std::invalid_argument for other sizes.
CorrMatrix corr(const ComplexMatrix& m);
Eigen::Matrix3cd corr_complex(const ComplexMatrix& m);

/// Controlled-SWAP test on |0⟩ ⊗ ρ ⊗ ρ; ⟨Z⟩ on the ancilla equals tr(ρ²) when shots = 0.
double swap_test_purity(const DensityMatrix& rho, int shots, std::uint64_t seed);

/// K_k = (I ⊗ ⟨k|) U (|0⟩ ⊗ I), k = 0, 1.
std::array<ComplexMatrix, 2> first_upload_kraus(const ComplexMatrix& u);

/// C̃_{μi} = ½ tr(σ_μ Λ(σ_i)) for Λ(X) = Σ_k K_k X K_k†.
CorrMatrix kraus_corr(const std::array<ComplexMatrix, 2>& kraus);

struct Observation1Result {
  CorrMatrix t;
  double det_t = 0.0;
};

/// T = corr(Σ_k J_k† Õ J_k) with J_k = V (K_k ⊗ I) and Õ = O ⊗ I, and det T.
/// Throws std::invalid_argument for non-unitary U, V or non-Hermitian O.
Observation1Result observation1_certificate(const ComplexMatrix& u, const ComplexMatrix& v, const ComplexMatrix& o);

using PurityObservableParams = std::array<double, 6>;

/// SWAP plus the six-parameter family of operators with tr((ρ⊗ρ)Ô) = tr(ρ²), written in the
/// basis e1..e4 = |00⟩, |01⟩, |10⟩, |11⟩.
ComplexMatrix purity_observable(const PurityObservableParams& c);

struct PurityObservableCheck {
  double det = 0.0;
  double closed_form = 0.0;
  /// max |tr((ρ⊗ρ)Ô) - tr(ρ²)| over the sampled states.
  double max_trace_deviation = 0.0;
};

/// det corr(Ô) next to 1 + c1² + (c3 + c5)² + (c4 + c6)², with the trace identity sampled on
/// `samples` random single-qubit states.
PurityObservableCheck purity_observable_det(const PurityObservableParams& c, int samples = 50,
                                            std::uint64_t seed = 1);

/// corr(e^{-ik·Σ} (σ_i ⊗ I) e^{ik·Σ}) with Σ = (XX, YY, ZZ), computed from the matrices.
CorrMatrix ksigma_corr(const Eigen::Vector3d& k, int i);
/// Closed form of the same matrix.
CorrMatrix ksigma_corr_closed_form(const Eigen::Vector3d& k, int i);

/// Haar-random element of SU(d).
ComplexMatrix sample_special_unitary(Eigen::Index dim, Rng& rng);

struct VerificationReport {
  std::string check_name;
  int trials = 0;
  double max_violation = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

/// evolution-formula, affine-map, swap-test, hadamard-test, observation1,
/// observation1-factorization, kraus-completeness, purity-observable, ksigma-corr.
std::vector<std::string> check_names();
int default_trials(const std::string& check);

/// Runs one check. Throws std::invalid_argument listing the valid names for unknown checks.
VerificationReport run_check(const std::string& check, int trials, std::uint64_t seed);

}  // namespace reupload
