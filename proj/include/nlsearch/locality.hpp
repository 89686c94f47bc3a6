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

// Locality diagnostics: the idealized regrouping of Step 4 changes reduced
// states of qubits it never touches, while the flag-local nonlinear dynamics
// leaves every input-qubit reduction invariant.

#include <span>
#include <string>
#include <vector>

#include "nlsearch/alpipeline.hpp"
#include "nlsearch/nldyn.hpp"
#include "nlsearch/qstate.hpp"

namespace nlsearch {

/// Input-qubit reductions moving further than this count as signaling.
inline constexpr double kSignalingThreshold = 1e-9;

enum class LocalityVerdict { signaling, no_signaling };

const char* to_string(LocalityVerdict verdict);

struct QubitLocality {
  /// 0..n-1 input slots, n the flag.
  int index = 0;
  bool is_flag = false;
  DensityMatrix before;
  /// Reduction at the last probed time.
  DensityMatrix after;
  double purity_before = 0.0;
  double purity_after = 0.0;
  /// max over probed times of max_ij |rho_ij(t) - rho_ij(0)|
  double max_deviation = 0.0;
};

struct LocalityReport {
  std::string dynamics;
  std::vector<double> times;
  std::vector<QubitLocality> qubits;
  double max_input_deviation = 0.0;
  LocalityVerdict verdict = LocalityVerdict::no_signaling;
};

/// Builds a report from an initial state and the states it evolved into.
/// `times` labels `evolved` one-to-one.
LocalityReport compare_reductions(std::string dynamics,
                                  const StateVector& initial,
                                  std::span<const StateVector> evolved,
                                  std::vector<double> times);

/// (|00> + |11>)/sqrt2 -> (|01> + |11>)/sqrt2, keeping the input's global
/// phase. Any other input throws std::invalid_argument.
StateVector mob_transform(const StateVector& state);

StateVector bell_state();

/// mob_transform on the Bell pair, seen from qubit 1.
LocalityReport signaling_check_mob();

/// Post-Step-3 state evolved by closed_form_evolve at each of `times`.
LocalityReport no_signaling_check(int n, const OracleSpec& oracle,
                                  const NonlinearParams& p,
                                  std::span<const double> times);

/// Post-Step-3 state against the state after each pairwise pass.
LocalityReport pairwise_signaling_check(const OracleSpec& oracle);

}  // namespace nlsearch
