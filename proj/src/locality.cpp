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

#include "nlsearch/locality.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include <fmt/format.h>

namespace nlsearch {

const char* to_string(LocalityVerdict verdict) {
  return verdict == LocalityVerdict::signaling ? "signaling" : "no-signaling";
}

LocalityReport compare_reductions(std::string dynamics,
                                  const StateVector& initial,
                                  std::span<const StateVector> evolved,
                                  std::vector<double> times) {
  if (evolved.empty() || evolved.size() != times.size()) {
    throw std::invalid_argument("need one time label per evolved state");
  }
  const int n = initial.n_inputs();
  LocalityReport report{std::move(dynamics), std::move(times), {}, 0.0,
                        LocalityVerdict::no_signaling};
  for (int index = 0; index <= n; ++index) {
    const Qubit qubit = Qubit::from_index(index, n);
    const DensityMatrix before = partial_trace(initial, qubit);
    double deviation = 0.0;
    for (const StateVector& state : evolved) {
      deviation = std::max(deviation,
                           partial_trace(state, qubit).max_abs_difference(before));
    }
    const DensityMatrix after = partial_trace(evolved.back(), qubit);
    report.qubits.push_back({index, qubit.is_flag(), before, after,
                             purity(before), purity(after), deviation});
    if (!qubit.is_flag()) {
      report.max_input_deviation = std::max(report.max_input_deviation, deviation);
    }
  }
  report.verdict = report.max_input_deviation > kSignalingThreshold
                       ? LocalityVerdict::signaling
                       : LocalityVerdict::no_signaling;
  return report;
}

StateVector bell_state() {
  const double h = 1.0 / std::sqrt(2.0);
  return StateVector::from_amplitudes(1, {h, 0.0, 0.0, h});
}

StateVector mob_transform(const StateVector& state) {
  if (state.n_inputs() != 1) {
    throw std::invalid_argument("the mobility map is defined on two qubits only");
  }
  const StateVector bell = bell_state();
  Amplitude overlap{};
  for (std::size_t i = 0; i < 4; ++i) overlap += std::conj(bell[i]) * state[i];
  if (std::abs(std::abs(overlap) - 1.0) > kStateTolerance) {
    throw std::invalid_argument(fmt::format(
        "the mobility map is defined only on (|00>+|11>)/sqrt2; |overlap| = {:.17g}",
        std::abs(overlap)));
  }
  const Amplitude phase = overlap / std::abs(overlap);
  const double h = 1.0 / std::sqrt(2.0);
  return StateVector::from_amplitudes(1, {0.0, phase * h, 0.0, phase * h});
}

LocalityReport signaling_check_mob() {
  const StateVector before = bell_state();
  const std::vector<StateVector> after{mob_transform(before)};
  return compare_reductions("mob-transform", before, after, {1.0});
}

LocalityReport no_signaling_check(int n, const OracleSpec& oracle,
                                  const NonlinearParams& p,
                                  std::span<const double> times) {
  if (oracle.n_inputs() != n) {
    throw std::invalid_argument("oracle size does not match n");
  }
  if (times.empty()) throw std::invalid_argument("no probe times given");
  const StateVector initial = apply_oracle(apply_walsh(init_state(n)), oracle);
  std::vector<StateVector> evolved;
  evolved.reserve(times.size());
  for (double t : times) evolved.push_back(closed_form_evolve(initial, t, p));
  return compare_reductions("local-nonlinear", initial, evolved,
                            {times.begin(), times.end()});
}

LocalityReport pairwise_signaling_check(const OracleSpec& oracle) {
  const PairwiseRun run = run_pairwise(oracle);
  std::vector<double> labels;
  for (std::size_t pass = 1; pass <= run.after_pass.size(); ++pass) {
    labels.push_back(static_cast<double>(pass));
  }
  return compare_reductions("pairwise-regrouping", run.after_oracle,
                            run.after_pass, std::move(labels));
}

}  // namespace nlsearch
