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

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "gtest/gtest.h"

using namespace nlsearch;

TEST(locality, mob_worked_example) {
  const LocalityReport r = signaling_check_mob();
  ASSERT_EQ(r.qubits.size(), 2u);
  const QubitLocality& q1 = r.qubits[0];
  EXPECT_FALSE(q1.is_flag);
  EXPECT_NEAR(q1.purity_before, 0.5, 1e-15);
  EXPECT_NEAR(q1.purity_after, 1.0, 1e-15);
  EXPECT_NEAR(q1.max_deviation, 0.5, 1e-15);
  EXPECT_NEAR(q1.after(0, 1).real(), 0.5, 1e-15);
  EXPECT_NEAR(q1.before(0, 1).real(), 0.0, 1e-15);
  EXPECT_EQ(r.verdict, LocalityVerdict::signaling);
  EXPECT_STREQ(to_string(r.verdict), "signaling");
}

TEST(locality, mob_keeps_global_phase) {
  const double h = 1.0 / std::sqrt(2.0);
  const Amplitude phase = std::polar(1.0, 0.7);
  const StateVector in = StateVector::from_amplitudes(1, {phase * h, 0.0, 0.0, phase * h});
  const StateVector out = mob_transform(in);
  EXPECT_NEAR(std::abs(out[1] - phase * h), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(out[3] - phase * h), 0.0, 1e-15);
  EXPECT_EQ(out[0], Amplitude{});
  EXPECT_EQ(out[2], Amplitude{});
}

TEST(locality, mob_rejects_other_inputs) {
  EXPECT_THROW(mob_transform(StateVector::basis(1, 0, 0)), std::invalid_argument);
  const double h = 1.0 / std::sqrt(2.0);
  EXPECT_THROW(mob_transform(StateVector::from_amplitudes(1, {h, 0.0, 0.0, -h})),
               std::invalid_argument);
  EXPECT_THROW(mob_transform(StateVector::basis(2, 0, 0)), std::invalid_argument);
}

TEST(locality, nonlinear_dynamics_does_not_signal) {
  const NonlinearParams p = default_params(3, 0.1);
  const std::vector<double> times{0.3, 1.0, hold_time(3, 1, p), 5.0};
  const LocalityReport r = no_signaling_check(3, OracleSpec(3, {0b110}), p, times);
  ASSERT_EQ(r.qubits.size(), 4u);
  EXPECT_LT(r.max_input_deviation, 1e-12);
  EXPECT_EQ(r.verdict, LocalityVerdict::no_signaling);
  EXPECT_TRUE(r.qubits.back().is_flag);
  EXPECT_GT(r.qubits.back().max_deviation, 0.1);
}

TEST(locality, s0_input_reductions_do_not_move_at_all) {
  const NonlinearParams p = default_params(4);
  const std::vector<double> times{0.5, 2.0, 6.0};
  const LocalityReport r = no_signaling_check(4, OracleSpec(4, {}), p, times);
  for (const QubitLocality& q : r.qubits) EXPECT_EQ(q.max_deviation, 0.0);
}

TEST(locality, pairwise_regrouping_signals) {
  const LocalityReport r = pairwise_signaling_check(OracleSpec(3, {0b110}));
  EXPECT_EQ(r.verdict, LocalityVerdict::signaling);
  EXPECT_EQ(r.times.size(), 3u);
  EXPECT_GT(r.max_input_deviation, kSignalingThreshold);
}

TEST(locality, compare_reductions_validates_labels) {
  const StateVector psi = bell_state();
  const std::vector<StateVector> one{psi};
  EXPECT_THROW(compare_reductions("x", psi, one, {}), std::invalid_argument);
  EXPECT_THROW(no_signaling_check(3, OracleSpec(2, {}), default_params(3), {}),
               std::invalid_argument);
}

TEST(locality_property, no_signaling_over_random_oracles) {
  for (int n = 1; n <= 6; ++n) {
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); m += 3) {
      const NonlinearParams p = default_params(n, 0.2);
      const std::vector<double> times{0.25, 1.5, 4.0};
      const LocalityReport r = no_signaling_check(n, OracleSpec(n, {m}), p, times);
      ASSERT_LT(r.max_input_deviation, 1e-12) << "n=" << n << " m=" << m;
    }
  }
}
