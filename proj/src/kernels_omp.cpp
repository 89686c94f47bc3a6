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

#include <cstdint>

#include "nlsearch/kernels.hpp"

namespace nlsearch::kernels::omp {
namespace {

constexpr Amplitude kMinusI{0.0, -1.0};

// Spreads the low bits of `i` around a zero inserted at `bit`.
inline std::uint64_t insert_zero(std::uint64_t i, unsigned bit) {
  const std::uint64_t low = (std::uint64_t{1} << bit) - 1;
  return ((i & ~low) << 1) | (i & low);
}

// Complex product without the inf/NaN recovery path of operator*.
inline Amplitude mul(Amplitude x, Amplitude y) {
  return {x.real() * y.real() - x.imag() * y.imag(),
          x.real() * y.imag() + x.imag() * y.real()};
}

inline std::int64_t signed_size(std::size_t n) {
  return static_cast<std::int64_t>(n);
}

}  // namespace

void apply_single_qubit(std::span<Amplitude> amps, unsigned bit,
                        const Matrix2& gate) {
  const std::uint64_t mask = std::uint64_t{1} << bit;
  const std::int64_t half = signed_size(amps.size() / 2);
  const Amplitude g00 = gate[0], g01 = gate[1], g10 = gate[2], g11 = gate[3];
#pragma omp parallel for schedule(static) firstprivate(g00, g01, g10, g11)
  for (std::int64_t i = 0; i < half; ++i) {
    const std::uint64_t i0 = insert_zero(static_cast<std::uint64_t>(i), bit);
    const std::uint64_t i1 = i0 | mask;
    const Amplitude a0 = amps[i0];
    const Amplitude a1 = amps[i1];
    amps[i0] = mul(g00, a0) + mul(g01, a1);
    amps[i1] = mul(g10, a0) + mul(g11, a1);
  }
}

double norm_squared(std::span<const Amplitude> amps) {
  double total = 0.0;
  const std::int64_t size = signed_size(amps.size());
#pragma omp parallel for reduction(+ : total) schedule(static)
  for (std::int64_t i = 0; i < size; ++i) total += std::norm(amps[i]);
  return total;
}

Matrix2 reduce_qubit(std::span<const Amplitude> amps, unsigned bit) {
  const std::uint64_t mask = std::uint64_t{1} << bit;
  const std::int64_t half = signed_size(amps.size() / 2);
  double p0 = 0.0, p1 = 0.0, c_re = 0.0, c_im = 0.0;
#pragma omp parallel for reduction(+ : p0, p1, c_re, c_im) schedule(static)
  for (std::int64_t i = 0; i < half; ++i) {
    const std::uint64_t i0 = insert_zero(static_cast<std::uint64_t>(i), bit);
    const Amplitude a0 = amps[i0];
    const Amplitude a1 = amps[i0 | mask];
    p0 += std::norm(a0);
    p1 += std::norm(a1);
    const Amplitude c = mul(a0, std::conj(a1));
    c_re += c.real();
    c_im += c.imag();
  }
  const Amplitude coherence{c_re, c_im};
  return {Amplitude{p0, 0.0}, coherence, std::conj(coherence),
          Amplitude{p1, 0.0}};
}

void apply_flag_operator(std::span<const Amplitude> in,
                         std::span<Amplitude> out, const Matrix2& op) {
  const std::int64_t pairs = signed_size(in.size() / 2);
  const Amplitude m00 = op[0], m01 = op[1], m10 = op[2], m11 = op[3];
#pragma omp parallel for schedule(static) firstprivate(m00, m01, m10, m11)
  for (std::int64_t x = 0; x < pairs; ++x) {
    const Amplitude a0 = in[2 * x];
    const Amplitude a1 = in[2 * x + 1];
    out[2 * x] = mul(m00, a0) + mul(m01, a1);
    out[2 * x + 1] = mul(m10, a0) + mul(m11, a1);
  }
}

void rotate_flag(std::span<const Amplitude> in, std::span<Amplitude> out,
                 double cos_term, double sin_term, const Matrix2& op) {
  const Amplitude k = kMinusI * sin_term;
  const std::int64_t pairs = signed_size(in.size() / 2);
  const Amplitude m00 = op[0], m01 = op[1], m10 = op[2], m11 = op[3];
#pragma omp parallel for schedule(static) \
    firstprivate(k, cos_term, m00, m01, m10, m11)
  for (std::int64_t x = 0; x < pairs; ++x) {
    const Amplitude a0 = in[2 * x];
    const Amplitude a1 = in[2 * x + 1];
    out[2 * x] = cos_term * a0 + mul(k, mul(m00, a0) + mul(m01, a1));
    out[2 * x + 1] = cos_term * a1 + mul(k, mul(m10, a0) + mul(m11, a1));
  }
}

Amplitude flag_expectation(std::span<const Amplitude> amps, const Matrix2& op) {
  double re = 0.0, im = 0.0;
  const std::int64_t pairs = signed_size(amps.size() / 2);
  const Amplitude m00 = op[0], m01 = op[1], m10 = op[2], m11 = op[3];
#pragma omp parallel for reduction(+ : re, im) schedule(static) \
    firstprivate(m00, m01, m10, m11)
  for (std::int64_t x = 0; x < pairs; ++x) {
    const Amplitude a0 = amps[2 * x];
    const Amplitude a1 = amps[2 * x + 1];
    const Amplitude v = mul(std::conj(a0), mul(m00, a0) + mul(m01, a1)) +
                        mul(std::conj(a1), mul(m10, a0) + mul(m11, a1));
    re += v.real();
    im += v.imag();
  }
  return {re, im};
}

void add_scaled(std::span<const Amplitude> base, Amplitude scale,
                std::span<const Amplitude> delta, std::span<Amplitude> out) {
  const std::int64_t size = signed_size(base.size());
#pragma omp parallel for schedule(static) firstprivate(scale)
  for (std::int64_t i = 0; i < size; ++i) out[i] = base[i] + mul(scale, delta[i]);
}

PairwiseOutcome pairwise_pass(std::span<Amplitude> amps, unsigned input_bit) {
  const std::uint64_t mask = std::uint64_t{1} << input_bit;
  const std::int64_t pairs = signed_size(amps.size() / 4);
  std::uint64_t changed = 0;
  bool invalid = false;
#pragma omp parallel for reduction(+ : changed) reduction(|| : invalid) \
    schedule(static)
  for (std::int64_t i = 0; i < pairs; ++i) {
    const std::uint64_t x = insert_zero(static_cast<std::uint64_t>(i), input_bit);
    const std::uint64_t y = x | mask;
    const bool x0 = amps[2 * x] != Amplitude{};
    const bool x1 = amps[2 * x + 1] != Amplitude{};
    const bool y0 = amps[2 * y] != Amplitude{};
    const bool y1 = amps[2 * y + 1] != Amplitude{};
    if ((x0 && x1) || (y0 && y1)) {
      invalid = true;
      continue;
    }
    if (x0 && y1) {
      amps[2 * x + 1] = amps[2 * x];
      amps[2 * x] = Amplitude{};
      ++changed;
    } else if (x1 && y0) {
      amps[2 * y + 1] = amps[2 * y];
      amps[2 * y] = Amplitude{};
      ++changed;
    }
  }
  return {changed, invalid};
}

}  // namespace nlsearch::kernels::omp
