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

// Steps 1-4 of the second Abrams-Lloyd search algorithm. Step 4 is the
// idealized pairwise regrouping: for every pair of inputs that differ in one
// slot, a flag 0 next to a flag 1 is switched to 1.

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "nlsearch/qstate.hpp"

namespace nlsearch {

/// The marked set S of the predicate f; f(x) = 1 iff x is in S.
class OracleSpec {
 public:
  /// Sorts and deduplicates `marked`; rejects values >= 2^n_inputs.
  OracleSpec(int n_inputs, std::vector<std::uint64_t> marked);

  int n_inputs() const { return n_inputs_; }
  const std::vector<std::uint64_t>& marked() const { return marked_; }
  std::size_t s() const { return marked_.size(); }
  bool f(std::uint64_t x) const;
  /// The search assumes at most one marked input. Larger sets still run.
  bool within_assumption() const { return marked_.size() <= 1; }

 private:
  int n_inputs_;
  std::vector<std::uint64_t> marked_;
};

/// A state outside the class the pairwise pass is defined on.
class StateClassError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Elementary operation counts. A single-qubit gate, an oracle query and a
/// pairwise pass each count as one.
struct PipelineState {
  StateVector state;
  int pass_count = 0;
  std::uint64_t op_count = 0;
};

/// |0...0>|0>. Requires 1 <= n <= kDenseInputCap.
StateVector init_state(int n);

/// U on every input qubit, flag untouched.
StateVector apply_walsh(const StateVector& state);
StateVector apply_walsh_inverse(const StateVector& state);

/// |x>|b> -> |x>|b xor f(x)>.
StateVector apply_oracle(const StateVector& state, const OracleSpec& oracle);

/// Pairs inputs differing in input slot `slot` (0-based, slot 0 is i_1).
/// Throws StateClassError if any input carries support on both flags.
StateVector pairwise_pass(const StateVector& state, int slot);

/// One pairwise pass per input slot, slot 0 first.
PipelineState step4_pairwise(const StateVector& state);
PipelineState step4_pairwise(PipelineState pipeline);

/// Probability that the flag reads 1.
double measure_flag(const StateVector& state);

/// Full record of Steps 1-4 for one oracle.
struct PairwiseRun {
  StateVector after_oracle;
  /// State after each pairwise pass, in pass order.
  std::vector<StateVector> after_pass;
  PipelineState final;
  std::uint64_t step4_ops = 0;
  /// Classical enumeration cost of the same decision: one query per input.
  std::uint64_t enumeration_baseline = 0;
};

PairwiseRun run_pairwise(const OracleSpec& oracle);

}  // namespace nlsearch
