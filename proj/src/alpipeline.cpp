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

#include "nlsearch/alpipeline.hpp"

#include <algorithm>
#include <utility>

#include <fmt/format.h>

namespace nlsearch {
namespace {

std::vector<Amplitude> copy_amplitudes(const StateVector& state) {
  return {state.amplitudes().begin(), state.amplitudes().end()};
}

StateVector apply_to_inputs(const StateVector& state, const Matrix2& gate) {
  std::vector<Amplitude> amps = copy_amplitudes(state);
  for (int slot = 0; slot < state.n_inputs(); ++slot) {
    kernels::omp::apply_single_qubit(amps, Qubit::input(slot).bit(state.n_inputs()),
                                     gate);
  }
  return StateVector::from_amplitudes(state.n_inputs(), std::move(amps));
}

}  // namespace

OracleSpec::OracleSpec(int n_inputs, std::vector<std::uint64_t> marked)
    : n_inputs_(n_inputs), marked_(std::move(marked)) {
  if (n_inputs < 1 || n_inputs > 62) {
    throw std::invalid_argument(fmt::format("bad input count {}", n_inputs));
  }
  const std::uint64_t limit = std::uint64_t{1} << n_inputs;
  std::sort(marked_.begin(), marked_.end());
  marked_.erase(std::unique(marked_.begin(), marked_.end()), marked_.end());
  if (!marked_.empty() && marked_.back() >= limit) {
    throw std::invalid_argument(fmt::format(
        "marked value {} does not fit in {} input bits", marked_.back(), n_inputs));
  }
}

bool OracleSpec::f(std::uint64_t x) const {
  return std::binary_search(marked_.begin(), marked_.end(), x);
}

StateVector init_state(int n) {
  if (n < 1 || n > kDenseInputCap) {
    throw std::invalid_argument(fmt::format(
        "n = {} outside the dense range [1, {}]", n, kDenseInputCap));
  }
  return StateVector::basis(n, 0, 0);
}

StateVector apply_walsh(const StateVector& state) {
  return apply_to_inputs(state, gates::walsh());
}

StateVector apply_walsh_inverse(const StateVector& state) {
  return apply_to_inputs(state, gates::adjoint(gates::walsh()));
}

StateVector apply_oracle(const StateVector& state, const OracleSpec& oracle) {
  if (oracle.n_inputs() != state.n_inputs()) {
    throw std::invalid_argument(fmt::format(
        "oracle over {} inputs applied to a {}-input register",
        oracle.n_inputs(), state.n_inputs()));
  }
  std::vector<Amplitude> amps = copy_amplitudes(state);
  for (std::uint64_t x : oracle.marked()) std::swap(amps[x << 1], amps[(x << 1) | 1]);
  return StateVector::from_amplitudes(state.n_inputs(), std::move(amps));
}

StateVector pairwise_pass(const StateVector& state, int slot) {
  const int n = state.n_inputs();
  if (slot < 0 || slot >= n) {
    throw std::invalid_argument(
        fmt::format("pair slot {} out of range [0, {})", slot, n));
  }
  std::vector<Amplitude> amps = copy_amplitudes(state);
  // Slot k sits at bit n-1-k of the input string.
  const auto outcome =
      kernels::omp::pairwise_pass(amps, static_cast<unsigned>(n - 1 - slot));
  if (outcome.invalid) {
    throw StateClassError(
        "an input string carries support on both flag values; the pairwise "
        "regrouping is undefined for this state");
  }
  return StateVector::from_amplitudes(n, std::move(amps));
}

PipelineState step4_pairwise(PipelineState pipeline) {
  for (int slot = 0; slot < pipeline.state.n_inputs(); ++slot) {
    pipeline.state = pairwise_pass(pipeline.state, slot);
    ++pipeline.pass_count;
    ++pipeline.op_count;
  }
  return pipeline;
}

PipelineState step4_pairwise(const StateVector& state) {
  return step4_pairwise(PipelineState{state, 0, 0});
}

double measure_flag(const StateVector& state) {
  // Normalized Born weight, so a flag with no support on one value reads
  // exactly 0 or 1 regardless of rounding in the total norm.
  const Matrix2 rho = kernels::omp::reduce_qubit(state.amplitudes(), 0);
  const double p0 = rho[0].real();
  const double p1 = rho[3].real();
  return p1 / (p0 + p1);
}

PairwiseRun run_pairwise(const OracleSpec& oracle) {
  const int n = oracle.n_inputs();
  PipelineState pipeline{init_state(n), 0, 0};
  pipeline.state = apply_walsh(pipeline.state);
  pipeline.op_count += static_cast<std::uint64_t>(n);
  pipeline.state = apply_oracle(pipeline.state, oracle);
  pipeline.op_count += 1;

  PairwiseRun run{pipeline.state, {}, pipeline, 0, std::uint64_t{1} << n};
  const std::uint64_t before_step4 = pipeline.op_count;
  for (int slot = 0; slot < n; ++slot) {
    pipeline.state = pairwise_pass(pipeline.state, slot);
    ++pipeline.pass_count;
    ++pipeline.op_count;
    run.after_pass.push_back(pipeline.state);
  }
  run.step4_ops = pipeline.op_count - before_step4;
  run.final = std::move(pipeline);
  return run;
}

}  // namespace nlsearch
