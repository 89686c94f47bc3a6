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

// Reference kernels: one plain loop over the full basis, no index tricks.

#include <cstdint>
#include <vector>

#include "nlsearch/kernels.hpp"

namespace nlsearch::kernels::serial {

void apply_single_qubit(std::span<Amplitude> amps, unsigned bit,
                        const Matrix2& gate) {
  const std::size_t mask = std::size_t{1} << bit;
  for (std::size_t i = 0; i < amps.size(); ++i) {
    if (i & mask) continue;
    const Amplitude a0 = amps[i];
    const Amplitude a1 = amps[i | mask];
    amps[i] = gate[0] * a0 + gate[1] * a1;
    amps[i | mask] = gate[2] * a0 + gate[3] * a1;
  }
}

double norm_squared(std::span<const Amplitude> amps) {
  double total = 0.0;
  for (const Amplitude& a : amps) total += std::norm(a);
  return total;
}

Matrix2 reduce_qubit(std::span<const Amplitude> amps, unsigned bit) {
  const std::size_t mask = std::size_t{1} << bit;
  Matrix2 rho{};
  for (std::size_t i = 0; i < amps.size(); ++i) {
    const std::size_t row = (i & mask) ? 1 : 0;
    for (std::size_t col = 0; col < 2; ++col) {
      const std::size_t j = col ? (i | mask) : (i & ~mask);
      rho[2 * row + col] += amps[i] * std::conj(amps[j]);
    }
  }
  return rho;
}

void apply_flag_operator(std::span<const Amplitude> in,
                         std::span<Amplitude> out, const Matrix2& op) {
  for (std::size_t i = 0; i < in.size(); ++i) {
    const std::size_t row = i & 1;
    const std::size_t base = i & ~std::size_t{1};
    out[i] = op[2 * row] * in[base] + op[2 * row + 1] * in[base + 1];
  }
}

void rotate_flag(std::span<const Amplitude> in, std::span<Amplitude> out,
                 double cos_term, double sin_term, const Matrix2& op) {
  for (std::size_t i = 0; i < in.size(); ++i) {
    const std::size_t row = i & 1;
    const std::size_t base = i & ~std::size_t{1};
    const Amplitude applied =
        op[2 * row] * in[base] + op[2 * row + 1] * in[base + 1];
    out[i] = cos_term * in[i] - Amplitude{0.0, sin_term} * applied;
  }
}

Amplitude flag_expectation(std::span<const Amplitude> amps, const Matrix2& op) {
  Amplitude total{};
  for (std::size_t i = 0; i < amps.size(); ++i) {
    const std::size_t row = i & 1;
    const std::size_t base = i & ~std::size_t{1};
    total += std::conj(amps[i]) *
             (op[2 * row] * amps[base] + op[2 * row + 1] * amps[base + 1]);
  }
  return total;
}

void add_scaled(std::span<const Amplitude> base, Amplitude scale,
                std::span<const Amplitude> delta, std::span<Amplitude> out) {
  for (std::size_t i = 0; i < base.size(); ++i) out[i] = base[i] + scale * delta[i];
}

PairwiseOutcome pairwise_pass(std::span<Amplitude> amps, unsigned input_bit) {
  const std::size_t inputs = amps.size() / 2;
  const std::size_t mask = std::size_t{1} << input_bit;

  // flag[x]: -1 no support, 0 or 1 the occupied flag value, 2 both.
  std::vector<int> flag(inputs, -1);
  for (std::size_t x = 0; x < inputs; ++x) {
    const bool zero = amps[2 * x] != Amplitude{};
    const bool one = amps[2 * x + 1] != Amplitude{};
    flag[x] = zero && one ? 2 : one ? 1 : zero ? 0 : -1;
  }

  PairwiseOutcome outcome;
  for (std::size_t x = 0; x < inputs; ++x) {
    if (flag[x] == 2) outcome.invalid = true;
  }
  if (outcome.invalid) return outcome;

  for (std::size_t x = 0; x < inputs; ++x) {
    if (flag[x] == 0 && flag[x ^ mask] == 1) {
      amps[2 * x + 1] = amps[2 * x];
      amps[2 * x] = Amplitude{};
      ++outcome.pairs_changed;
    }
  }
  return outcome;
}

}  // namespace nlsearch::kernels::serial
