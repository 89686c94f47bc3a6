// Copyright 2026 The nlsearch Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Register representation shared by every module: dense state vectors over
// n input qubits plus one flag qubit, single-qubit gates, partial traces.
//
// Basis index b = (x << 1) | flag, where x holds the input bits i_1..i_n with
// i_1 most significant. Kets read |i_1 ... i_n>|flag>.

#include <complex>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "nlsearch/kernels.hpp"

namespace nlsearch {

using Amplitude = kernels::Amplitude;
using Matrix2 = kernels::Matrix2;

inline constexpr double kStateTolerance = 1e-12;
/// Tight enough that one gate cannot push a state outside kStateTolerance.
inline constexpr double kUnitarityTolerance = 1e-13;
/// Largest input register held as a dense vector (2^21 amplitudes).
inline constexpr int kDenseInputCap = 20;

/// Raised when a numerical procedure cannot meet its accuracy contract.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Selects one qubit of the register: an input slot (0-based) or the flag.
class Qubit {
 public:
  static constexpr Qubit input(int slot) { return Qubit(slot); }
  static constexpr Qubit flag() { return Qubit(kFlag); }
  /// Index convention used on the command line and in reports:
  /// 0..n-1 are input slots, n is the flag.
  static Qubit from_index(int index, int n_inputs);

  constexpr bool is_flag() const { return slot_ == kFlag; }
  constexpr int slot() const { return slot_; }
  int index(int n_inputs) const { return is_flag() ? n_inputs : slot_; }
  /// Position of this qubit inside the basis index.
  unsigned bit(int n_inputs) const;

  friend constexpr bool operator==(Qubit, Qubit) = default;

 private:
  static constexpr int kFlag = -1;
  explicit constexpr Qubit(int slot) : slot_(slot) {}
  int slot_;
};

class StateVector {
 public:
  /// Computational basis state |x>|flag>.
  static StateVector basis(int n_inputs, std::uint64_t input, int flag = 0);
  /// Validates length 2^(n_inputs+1) and unit norm within kStateTolerance.
  static StateVector from_amplitudes(int n_inputs,
                                     std::vector<Amplitude> amplitudes);

  int n_inputs() const { return n_inputs_; }
  std::size_t size() const { return amplitudes_.size(); }
  std::uint64_t input_count() const { return amplitudes_.size() / 2; }
  std::span<const Amplitude> amplitudes() const { return amplitudes_; }
  const Amplitude& operator[](std::size_t i) const { return amplitudes_[i]; }
  const Amplitude& at(std::uint64_t input, int flag) const {
    return amplitudes_[(input << 1) | static_cast<std::uint64_t>(flag)];
  }
  double norm_squared() const;

 private:
  StateVector(int n_inputs, std::vector<Amplitude> amplitudes)
      : n_inputs_(n_inputs), amplitudes_(std::move(amplitudes)) {}

  int n_inputs_;
  std::vector<Amplitude> amplitudes_;
};

/// Hermitian, positive, unit-trace matrix.
class DensityMatrix {
 public:
  /// Validates the density-matrix invariants within kStateTolerance.
  static DensityMatrix from_entries(std::size_t dim,
                                    std::vector<Amplitude> entries);
  static DensityMatrix from_matrix2(const Matrix2& m) {
    return from_entries(2, {m.begin(), m.end()});
  }
  static DensityMatrix diagonal(std::span<const double> weights);

  std::size_t dim() const { return dim_; }
  const Amplitude& operator()(std::size_t row, std::size_t col) const {
    return entries_[row * dim_ + col];
  }
  std::span<const Amplitude> entries() const { return entries_; }
  Amplitude trace() const;
  /// Tr(rho * op) for a dim x dim row-major operator.
  Amplitude expectation(std::span<const Amplitude> op) const;
  /// Ascending eigenvalues.
  std::vector<double> eigenvalues() const;
  /// Largest |rho_ij - other_ij|.
  double max_abs_difference(const DensityMatrix& other) const;

 private:
  DensityMatrix(std::size_t dim, std::vector<Amplitude> entries)
      : dim_(dim), entries_(std::move(entries)) {}

  std::size_t dim_;
  std::vector<Amplitude> entries_;
};

namespace gates {

Matrix2 identity();
/// U|0> = (|0>+|1>)/sqrt2, U|1> = (-|0>+|1>)/sqrt2.
Matrix2 walsh();
Matrix2 pauli_x();
Matrix2 sigma3();
Matrix2 adjoint(const Matrix2& m);
Matrix2 multiply(const Matrix2& a, const Matrix2& b);
double unitarity_defect(const Matrix2& m);

}  // namespace gates

/// Throws std::invalid_argument for an out-of-range qubit or a gate that is
/// not unitary within kUnitarityTolerance.
StateVector apply_single_qubit_gate(const StateVector& state, Qubit qubit,
                                    const Matrix2& gate);

/// 2x2 reduced density matrix of one qubit.
DensityMatrix partial_trace(const StateVector& state, Qubit keep);

/// Tr rho^2.
double purity(const DensityMatrix& rho);

}  // namespace nlsearch
