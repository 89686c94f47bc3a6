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

#include "nlsearch/nldyn.hpp"

#include <cmath>
#include <numbers>

#include "gtest/gtest.h"
#include "nlsearch/alpipeline.hpp"

using namespace nlsearch;

namespace {

constexpr double kPi = std::numbers::pi;

StateVector post_oracle(int n, std::vector<std::uint64_t> marked) {
  return apply_oracle(apply_walsh(init_state(n)), OracleSpec(n, std::move(marked)));
}

}  // namespace

TEST(nldyn, flag_operator_squares_to_identity) {
  for (double eta : {1e-4, 0.01, 0.3, 0.99}) {
    const FlagOperator a(eta);
    const Matrix2 sq = gates::multiply(a.matrix(), a.matrix());
    EXPECT_NEAR(std::abs(sq[0] - 1.0), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(sq[1]), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(sq[2]), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(sq[3] - 1.0), 0.0, 1e-12);
    EXPECT_EQ(a.matrix()[1], a.matrix()[2]);
  }
  EXPECT_THROW(FlagOperator(0.0), std::invalid_argument);
  EXPECT_THROW(FlagOperator(1.0), std::invalid_argument);
}

TEST(nldyn, params_validation_and_defaults) {
  EXPECT_THROW((NonlinearParams{0.0, 1.0, 0.1}.validate()), std::invalid_argument);
  EXPECT_THROW((NonlinearParams{1.0, -1.0, 0.1}.validate()), std::invalid_argument);
  EXPECT_THROW((NonlinearParams{1.0, 1.0, 1.0}.validate()), std::invalid_argument);
  // max(2^n, 10 * 2^(n-1) / eta)
  EXPECT_DOUBLE_EQ(default_alpha(3, 0.01), 4000.0);
  EXPECT_DOUBLE_EQ(default_alpha(3, 0.9), 40.0 / 0.9);
  EXPECT_DOUBLE_EQ(default_time_step(1.0), 2e-3 * kPi);
}

TEST(nldyn, omega_values) {
  const NonlinearParams p{1.0, 400.0, 0.1};
  EXPECT_EQ(omega(3, 0, p), 0.0);
  // tanh(400 * 0.1 / 4) = tanh(10), mpmath: 0.999999995877692763619...
  EXPECT_NEAR(omega(3, 1, p), 0.99999999587769276, 1e-15);
  EXPECT_LT(omega_trace_form(3, 1, p), 0.0);
  EXPECT_NEAR(std::abs(omega_trace_form(3, 1, p)), omega_displayed_form(3, 1, p), 1e-16);
  EXPECT_EQ(omega(3, 1, NonlinearParams{2.5, 1e9, 0.1}), 2.5);
}

TEST(nldyn, omega_of_state_matches_count_formula) {
  const NonlinearParams p = default_params(4, 0.3);
  EXPECT_NEAR(omega_of_state(post_oracle(4, {3}), p), omega_trace_form(4, 1, p), 1e-15);
  EXPECT_EQ(omega_of_state(post_oracle(4, {}), p), 0.0);
}

TEST(nldyn, closed_form_evolve_special_times) {
  const NonlinearParams p{1.0, 400.0, 0.1};
  const StateVector psi = post_oracle(3, {0b110});
  const StateVector same = closed_form_evolve(psi, 0.0, p);
  for (std::size_t i = 0; i < psi.size(); ++i) EXPECT_EQ(same[i], psi[i]);

  const double half_turn = kPi / omega(3, 1, p);
  const StateVector flipped = closed_form_evolve(psi, half_turn, p);
  for (std::size_t i = 0; i < psi.size(); ++i) {
    EXPECT_NEAR(std::abs(flipped[i] + psi[i]), 0.0, 1e-12);
  }
  EXPECT_NEAR(flag_sigma3(flipped), flag_sigma3(psi), 1e-12);

  const StateVector idle = post_oracle(3, {});
  for (double t : {0.5, 3.0, 100.0}) {
    const StateVector out = closed_form_evolve(idle, t, p);
    for (std::size_t i = 0; i < idle.size(); ++i) EXPECT_EQ(out[i], idle[i]);
  }
}

TEST(nldyn, sigma3_formula_values) {
  const NonlinearParams p = default_params(3, 0.1);
  EXPECT_DOUBLE_EQ(sigma3_closed_form(0.0, 3, 1, p), 0.75);
  EXPECT_DOUBLE_EQ(sigma3_closed_form(0.0, 5, 1, p), 15.0 / 16.0);
  for (double t : {0.0, 0.7, 2.0, 50.0}) EXPECT_EQ(sigma3_closed_form(t, 3, 0, p), 1.0);

  // eta -> 0: min over t of z0 cos(2wt) is -z0 = -3/4. Dense sampling.
  const NonlinearParams tiny{1.0, 1e9, 1e-6};
  double lowest = 1.0;
  for (int k = 0; k <= 200000; ++k) {
    lowest = std::min(lowest, sigma3_closed_form(k * kPi / 200000.0, 3, 1, tiny));
  }
  EXPECT_NEAR(lowest, -0.75, 1e-8);
}

TEST(nldyn, sigma3_stays_in_range) {
  for (int n : {1, 2, 3, 8, 30}) {
    for (std::size_t s : {0, 1}) {
      const Trajectory t = closed_form_trajectory(n, s, default_params(n, 0.3), 7.0, 0.01);
      for (const auto& sample : t.samples) {
        EXPECT_LE(sample.sigma3, 1.0 + 1e-9);
        EXPECT_GE(sample.sigma3, -1.0 - 1e-9);
      }
    }
  }
}

TEST(nldyn, time_grid_is_exact_multiples) {
  const std::vector<double> grid = time_grid(2 * kPi, 2e-3 * kPi);
  ASSERT_EQ(grid.size(), 1001u);
  EXPECT_EQ(grid[0], 0.0);
  EXPECT_EQ(grid[500], 500 * 2e-3 * kPi);
  const std::vector<double> ragged = time_grid(1.05, 0.1);
  EXPECT_EQ(ragged.size(), 12u);
  EXPECT_THROW(time_grid(0.01, 0.1), std::invalid_argument);
  EXPECT_THROW(time_grid(1.0, 0.0), std::invalid_argument);
}

TEST(nldyn, rk4_s0_is_stationary) {
  const NonlinearParams p = default_params(3);
  const Rk4Result r = rk4_evolve(post_oracle(3, {}), 2 * kPi, 2e-3 * kPi, p);
  for (const auto& sample : r.trajectory.samples) EXPECT_NEAR(sample.sigma3, 1.0, 1e-10);
}

TEST(nldyn, rk4_matches_closed_form_worked_case) {
  const NonlinearParams p{1.0, 400.0, 0.1};
  const StateVector psi = post_oracle(3, {0b110});
  const Rk4Result r = rk4_evolve(psi, 2 * kPi, 1e-3, p);
  ASSERT_GT(r.trajectory.samples.size(), 6000u);
  for (const auto& sample : r.trajectory.samples) {
    ASSERT_NEAR(sample.sigma3, sigma3_closed_form(sample.t, 3, 1, p), 1e-6);
  }
  EXPECT_LT(r.generator_drift, 1e-8);
  EXPECT_LT(r.norm_drift, 1e-8);

  const StateVector closed = closed_form_evolve(psi, r.trajectory.duration(), p);
  for (std::size_t i = 0; i < psi.size(); ++i) {
    EXPECT_NEAR(std::abs(r.final_amplitudes[i] - closed[i]), 0.0, 1e-6);
  }
}

TEST(nldyn, rk4_rejects_norm_drift) {
  const NonlinearParams p{40.0, 1e4, 0.3};
  EXPECT_THROW(rk4_evolve(post_oracle(2, {1}), 6.0, 0.5, p), NumericalError);
}

TEST(nldyn, single_qubit_fixed_point) {
  const NonlinearParams p{1.0, 1e6, 0.01};
  const SingleQubitTrajectory t = single_qubit_evolve({1.0, 0.0}, 10.0, 1e-2, p);
  for (const auto& sample : t.samples) {
    EXPECT_NEAR(sample.sigma3, 1.0, 1e-10);
    EXPECT_EQ(sample.tanh_argument, 0.0);
  }
}

TEST(nldyn, single_qubit_small_admixture_is_amplified) {
  const NonlinearParams p{1.0, 1e4 / 0.01, 0.01};
  const SingleQubitTrajectory t =
      single_qubit_evolve({std::sqrt(1.0 - 1e-6), 1e-3}, 10.0, 1e-3, p);
  EXPECT_NEAR(t.samples.front().frequency, 1.0, 1e-12);
  double lo = 1.0, hi = -1.0;
  for (const auto& s : t.samples) {
    lo = std::min(lo, s.sigma3);
    hi = std::max(hi, s.sigma3);
  }
  EXPECT_GT(hi - lo, 1e-5);
}

TEST(nldyn, single_qubit_one_state_frequency) {
  const NonlinearParams p{1.0, 5.0, 0.1};
  const SingleQubitTrajectory t = single_qubit_evolve({0.0, 1.0}, 6.0, 1e-3, p);
  EXPECT_NEAR(t.samples.front().tanh_argument, -0.2, 1e-15);
  const double w = std::tanh(2.0 * p.alpha * p.eta);
  EXPECT_NEAR(std::abs(t.samples.front().frequency), w, 1e-15);
  // |1> starts at z0 = -1: <sigma3> = -(cos 2wt + 2 eta^2 sin^2 wt).
  for (const auto& s : t.samples) {
    const double expected =
        -(std::cos(2 * w * s.t) + 2 * p.eta * p.eta * std::pow(std::sin(w * s.t), 2));
    ASSERT_NEAR(s.sigma3, expected, 1e-8);
    ASSERT_NEAR(s.tanh_argument, -0.2, 1e-8);
  }
  EXPECT_THROW(single_qubit_evolve({1.0, 1.0}, 1.0, 0.1, p), std::invalid_argument);
}

TEST(nldyn, decide_s_verdicts) {
  const NonlinearParams p3 = default_params(3, 0.1);
  const double t_max = default_t_max(1.0);
  const double dt = default_time_step(1.0);
  EXPECT_EQ(decide_s(closed_form_trajectory(3, 0, p3, t_max, dt), 3), SearchVerdict::zero);
  EXPECT_EQ(decide_s(closed_form_trajectory(3, 1, p3, t_max, dt), 3), SearchVerdict::nonzero);

  const NonlinearParams p20 = default_params(20);
  const Trajectory big = closed_form_trajectory(20, 1, p20, t_max, dt);
  EXPECT_EQ(decide_s(big, 20), SearchVerdict::nonzero);
  EXPECT_LT(big.minimum().sigma3, -0.999);

  EXPECT_THROW(decide_s(closed_form_trajectory(3, 1, p3, 1.0, dt), 3), std::invalid_argument);
  EXPECT_DOUBLE_EQ(decision_margin(3), 0.125);
}

TEST(nldyn, hold_time_values) {
  EXPECT_DOUBLE_EQ(hold_time(3, 1, NonlinearParams{2.0, 1e9, 0.1}), kPi / 4.0);
  // pi / (2 tanh 10), mpmath: 1.5707963332702017107...
  EXPECT_NEAR(hold_time(3, 1, NonlinearParams{1.0, 400.0, 0.1}), 1.5707963332702017, 1e-15);
  EXPECT_THROW(hold_time(3, 0, default_params(3)), NoOscillation);

  // The hold time is the minimizer: sample around it.
  const NonlinearParams p = default_params(6, 0.2);
  const double t_star = hold_time(6, 1, p);
  const double at = sigma3_closed_form(t_star, 6, 1, p);
  for (double d : {-1e-3, -1e-5, 1e-5, 1e-3}) {
    EXPECT_LT(at, sigma3_closed_form(t_star + d, 6, 1, p));
  }
}

TEST(nldyn, dip_depth_matches_formula) {
  const NonlinearParams p = default_params(10, 0.01);
  const double z0 = 511.0 / 512.0;
  const double t_star = hold_time(10, 1, p);
  EXPECT_NEAR(sigma3_closed_form(t_star, 10, 1, p), -z0 + 2 * 0.01 * 0.01 * z0, 1e-9);
  // mpmath: -0.997847265625
  EXPECT_NEAR(sigma3_closed_form(t_star, 10, 1, p), -0.997847265625, 1e-9);
}

TEST(nldyn_property, dense_and_analytic_paths_agree) {
  for (int n = 1; n <= 10; ++n) {
    for (std::size_t s : {0, 1}) {
      const NonlinearParams p = default_params(n, 0.05);
      const StateVector psi = post_oracle(n, s ? std::vector<std::uint64_t>{0} : std::vector<std::uint64_t>{});
      const Trajectory dense = dense_closed_form_trajectory(psi, p, 6.3, 0.05);
      const Trajectory analytic = closed_form_trajectory(n, s, p, 6.3, 0.05);
      ASSERT_EQ(dense.samples.size(), analytic.samples.size());
      EXPECT_EQ(dense.s, s);
      for (std::size_t k = 0; k < dense.samples.size(); ++k) {
        ASSERT_NEAR(dense.samples[k].sigma3, analytic.samples[k].sigma3, 1e-12);
        ASSERT_NEAR(flag_sigma3(closed_form_evolve(psi, dense.samples[k].t, p)),
                    analytic.samples[k].sigma3, 1e-12);
      }
    }
  }
}

TEST(nldyn_property, rk4_agrees_with_closed_form_on_sample_grid) {
  for (int n : {2, 5}) {
    for (double eta : {0.3, 0.01}) {
      for (double alpha : {std::ldexp(1.0, n), 10.0 * std::ldexp(1.0, n - 1) / eta}) {
        const NonlinearParams p{1.0, alpha, eta};
        const Rk4Result r =
            rk4_evolve(post_oracle(n, {1}), default_t_max(1.0), default_time_step(1.0), p);
        for (const auto& s : r.trajectory.samples) {
          ASSERT_NEAR(s.sigma3, sigma3_closed_form(s.t, n, 1, p), 1e-6);
        }
        EXPECT_LT(r.norm_drift, 1e-8);
        EXPECT_LT(r.generator_drift, 1e-8);
      }
    }
  }
}
