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

#include "reupload/pauli.hpp"

#include <stdexcept>

namespace reupload {

namespace {

// Bit mask of qubits flipped by the word (X or Y letters), qubit 0 being most significant.
struct SignedPermutation {
  std::size_t flip = 0;
  std::size_t z_mask = 0;  // letters contributing a -1 on |1⟩ (Y or Z)
  std::size_t y_count = 0;
};

SignedPermutation decompose_word(std::size_t alpha, int n_qubits) {
  SignedPermutation sp;
  for (int q = 0; q < n_qubits; ++q) {
    const auto letter = static_cast<int>((alpha >> (2 * (n_qubits - 1 - q))) & 3U);
    const std::size_t bit = std::size_t{1} << (n_qubits - 1 - q);
    if (letter == 1 || letter == 2) sp.flip |= bit;
    if (letter == 2 || letter == 3) sp.z_mask |= bit;
    if (letter == 2) ++sp.y_count;
  }
  return sp;
}

// W_α |y⟩ = phase(y) |y ⊕ flip⟩ with phase(y) = i^{#Y} (-1)^{popcount(y & z_mask)}.
Complex word_phase(const SignedPermutation& sp, std::size_t y) {
  static const Complex kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  const Complex base = kIPow[sp.y_count % 4];
  return (__builtin_popcountll(y & sp.z_mask) & 1) ? -base : base;
}

}  // namespace

PauliWord::PauliWord(std::vector<std::uint8_t> letters) : letters_(std::move(letters)) {
  if (letters_.empty()) throw std::invalid_argument("PauliWord: empty word");
  for (auto l : letters_) {
    if (l > 3) throw std::invalid_argument("PauliWord: letters must be in 0..3");
  }
}

PauliWord PauliWord::from_index(std::size_t alpha, int n_qubits) {
  if (n_qubits < 1 || alpha >= pauli_count(n_qubits)) {
    throw std::invalid_argument("PauliWord::from_index: index out of range");
  }
  std::vector<std::uint8_t> letters(static_cast<std::size_t>(n_qubits));
  for (int q = n_qubits - 1; q >= 0; --q) {
    letters[static_cast<std::size_t>(q)] = static_cast<std::uint8_t>(alpha & 3U);
    alpha >>= 2;
  }
  return PauliWord(std::move(letters));
}

PauliWord PauliWord::parse(const std::string& text) {
  std::vector<std::uint8_t> letters;
  for (char ch : text) {
    switch (ch) {
      case 'I': letters.push_back(0); break;
      case 'X': letters.push_back(1); break;
      case 'Y': letters.push_back(2); break;
      case 'Z': letters.push_back(3); break;
      default: throw std::invalid_argument("PauliWord::parse: unexpected letter in '" + text + "'");
    }
  }
  return PauliWord(std::move(letters));
}

std::size_t PauliWord::index() const {
  std::size_t alpha = 0;
  for (auto l : letters_) alpha = 4 * alpha + l;
  return alpha;
}

bool PauliWord::is_identity() const {
  for (auto l : letters_) {
    if (l != 0) return false;
  }
  return true;
}

std::string PauliWord::to_string() const {
  static constexpr char kNames[] = {'I', 'X', 'Y', 'Z'};
  std::string s;
  for (auto l : letters_) s.push_back(kNames[l]);
  return s;
}

ComplexMatrix pauli(int k) {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  switch (k) {
    case 0: m(0, 0) = 1; m(1, 1) = 1; break;
    case 1: m(0, 1) = 1; m(1, 0) = 1; break;
    case 2: m(0, 1) = Complex(0, -1); m(1, 0) = Complex(0, 1); break;
    case 3: m(0, 0) = 1; m(1, 1) = -1; break;
    default: throw std::invalid_argument("pauli: index must be in 0..3");
  }
  return m;
}

void add_scaled_pauli(ComplexMatrix& m, std::size_t alpha, int n_qubits, Complex scale) {
  const auto sp = decompose_word(alpha, n_qubits);
  const std::size_t dim = std::size_t{1} << n_qubits;
  for (std::size_t y = 0; y < dim; ++y) {
    m(static_cast<Eigen::Index>(y ^ sp.flip), static_cast<Eigen::Index>(y)) += scale * word_phase(sp, y);
  }
}

ComplexMatrix pauli_matrix(std::size_t alpha, int n_qubits) {
  if (n_qubits < 1 || alpha >= pauli_count(n_qubits)) {
    throw std::invalid_argument("pauli_matrix: index out of range");
  }
  const auto dim = Eigen::Index{1} << n_qubits;
  ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
  add_scaled_pauli(m, alpha, n_qubits, 1.0);
  return m;
}

ComplexMatrix pauli_matrix(const PauliWord& w) { return pauli_matrix(w.index(), w.n_qubits()); }

ComplexVector pauli_traces(const ComplexMatrix& m) {
  const auto dim = static_cast<std::size_t>(m.rows());
  int n = 0;
  while ((std::size_t{1} << n) < dim) ++n;
  if ((std::size_t{1} << n) != dim || m.cols() != m.rows() || n < 1) {
    throw std::invalid_argument("pauli_traces: matrix dimension must be a power of two");
  }
  ComplexVector out(static_cast<Eigen::Index>(pauli_count(n)));
  for (std::size_t alpha = 0; alpha < pauli_count(n); ++alpha) {
    const auto sp = decompose_word(alpha, n);
    // tr(W m) = Σ_y ⟨y ⊕ f| ... = Σ_y phase(y) m(y, y ⊕ f)
    Complex acc = 0.0;
    for (std::size_t y = 0; y < dim; ++y) {
      acc += word_phase(sp, y) * m(static_cast<Eigen::Index>(y), static_cast<Eigen::Index>(y ^ sp.flip));
    }
    out(static_cast<Eigen::Index>(alpha)) = acc;
  }
  return out;
}

PauliProjectors pauli_projectors(const PauliWord& w) {
  if (w.is_identity()) {
    throw std::invalid_argument("pauli_projectors: identity word has no ±1 splitting");
  }
  const ComplexMatrix wm = pauli_matrix(w);
  const ComplexMatrix eye = ComplexMatrix::Identity(wm.rows(), wm.cols());
  return {0.5 * (eye + wm), 0.5 * (eye - wm)};
}

}  // namespace reupload
