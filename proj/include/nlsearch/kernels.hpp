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

// Dense state-vector kernels. Two implementations share one signature set:
// `omp` is the production path, `serial` is a straightforward reference kept
// for cross-checking in tests and for the benchmark baseline.
//
// Basis index layout: bit 0 is the flag qubit, bits 1..n are the input
// qubits with input slot 1 in the most significant position.

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>

namespace nlsearch::kernels {

using Amplitude = std::complex<double>;

/// Row-major 2x2 complex matrix: {m00, m01, m10, m11}.
using Matrix2 = std::array<Amplitude, 4>;

/// Result of one pairwise regrouping pass.
struct PairwiseOutcome {
  std::uint64_t pairs_changed = 0;
  /// Some input string carried support on both flag values.
  bool invalid = false;
};

namespace omp {

// Applies `gate` to the qubit stored at basis-index bit `bit`.
void apply_single_qubit(std::span<Amplitude> amps, unsigned bit,
                        const Matrix2& gate);
double norm_squared(std::span<const Amplitude> amps);
// Reduced density matrix of the qubit at basis-index bit `bit`.
Matrix2 reduce_qubit(std::span<const Amplitude> amps, unsigned bit);
// out = (1 (x) op) in, with op acting on the flag.
void apply_flag_operator(std::span<const Amplitude> in,
                         std::span<Amplitude> out, const Matrix2& op);
// out = cos_term * in - i * sin_term * (1 (x) op) in
void rotate_flag(std::span<const Amplitude> in, std::span<Amplitude> out,
                 double cos_term, double sin_term, const Matrix2& op);
// <psi| 1 (x) op |psi>
Amplitude flag_expectation(std::span<const Amplitude> amps, const Matrix2& op);
// out = base + scale * delta
void add_scaled(std::span<const Amplitude> base, Amplitude scale,
                std::span<const Amplitude> delta, std::span<Amplitude> out);
// One OR-regrouping pass pairing input strings that differ in bit
// `input_bit` of the input register (bit 0 = last input slot). In place;
// when the outcome is invalid the buffer contents are unspecified.
PairwiseOutcome pairwise_pass(std::span<Amplitude> amps, unsigned input_bit);

}  // namespace omp

namespace serial {

void apply_single_qubit(std::span<Amplitude> amps, unsigned bit,
                        const Matrix2& gate);
double norm_squared(std::span<const Amplitude> amps);
Matrix2 reduce_qubit(std::span<const Amplitude> amps, unsigned bit);
void apply_flag_operator(std::span<const Amplitude> in,
                         std::span<Amplitude> out, const Matrix2& op);
void rotate_flag(std::span<const Amplitude> in, std::span<Amplitude> out,
                 double cos_term, double sin_term, const Matrix2& op);
Amplitude flag_expectation(std::span<const Amplitude> amps, const Matrix2& op);
void add_scaled(std::span<const Amplitude> base, Amplitude scale,
                std::span<const Amplitude> delta, std::span<Amplitude> out);
PairwiseOutcome pairwise_pass(std::span<Amplitude> amps, unsigned input_bit);

}  // namespace serial

}  // namespace nlsearch::kernels
