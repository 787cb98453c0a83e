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

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "reupload/linalg.hpp"

namespace reupload {

/// Generalized Pauli word. Letters 0..3 stand for I, X, Y, Z; the first letter acts on the
/// most significant qubit, and the word index is the base-4 number spelled by the letters.
class PauliWord {
 public:
  PauliWord() = default;
  explicit PauliWord(std::vector<std::uint8_t> letters);

  static PauliWord from_index(std::size_t alpha, int n_qubits);
  /// Parses strings such as "XZ" or "IY".
  static PauliWord parse(const std::string& text);

  int n_qubits() const { return static_cast<int>(letters_.size()); }
  const std::vector<std::uint8_t>& letters() const { return letters_; }
  std::size_t index() const;
  bool is_identity() const;
  std::string to_string() const;

  friend bool operator==(const PauliWord&, const PauliWord&) = default;

 private:
  std::vector<std::uint8_t> letters_;
};

inline std::size_t pauli_count(int n_qubits) { return std::size_t{1} << (2 * n_qubits); }

/// The 2×2 Pauli σ^(k), k = 0..3.
ComplexMatrix pauli(int k);

ComplexMatrix pauli_matrix(const PauliWord& w);
ComplexMatrix pauli_matrix(std::size_t alpha, int n_qubits);

/// m += scale · W_α, written directly from the signed-permutation form of W_α.
void add_scaled_pauli(ComplexMatrix& m, std::size_t alpha, int n_qubits, Complex scale);

/// tr(W_α m) for every α = 0 .. 4^n - 1, exploiting that each W_α is a signed permutation.
ComplexVector pauli_traces(const ComplexMatrix& m);

struct PauliProjectors {
  ComplexMatrix plus;   // ½(I + W)
  ComplexMatrix minus;  // ½(I - W)
};

/// Spectral projectors of a non-identity word. Throws std::invalid_argument for the identity.
PauliProjectors pauli_projectors(const PauliWord& w);

}  // namespace reupload
