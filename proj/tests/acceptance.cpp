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

// Acceptance runner: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "nlsearch/alpipeline.hpp"
#include "nlsearch/locality.hpp"
#include "nlsearch/nldyn.hpp"

namespace {

using namespace nlsearch;

struct Outcome {
  bool passed = true;
  std::string detail;
};

struct Criterion {
  int id;
  std::string title;
  double time_limit_s;
  std::function<Outcome()> check;
};

StateVector post_oracle(int n, const std::vector<std::uint64_t>& marked) {
  return apply_oracle(apply_walsh(init_state(n)), OracleSpec(n, marked));
}

std::vector<std::uint64_t> marked_of(std::size_t s) {
  return s == 0 ? std::vector<std::uint64_t>{} : std::vector<std::uint64_t>{1};
}

// Flagged inputs with the amplitude of every basis state checked against
// 1/sqrt(2^n) on the flag given by `flagged`.
bool uniform_with_flags(const StateVector& state,
                        const std::vector<std::uint64_t>& flagged) {
  const double a = 1.0 / std::sqrt(static_cast<double>(state.input_count()));
  for (std::uint64_t x = 0; x < state.input_count(); ++x) {
    const int flag = std::find(flagged.begin(), flagged.end(), x) != flagged.end();
    if (std::abs(state.at(x, flag) - a) > 1e-12) return false;
    if (state.at(x, 1 - flag) != Amplitude{}) return false;
  }
  return true;
}

Outcome worked_example() {
  const PairwiseRun run = run_pairwise(OracleSpec(3, {0b110}));
  const std::vector<std::vector<std::uint64_t>> expected{
      {0b110},
      {0b010, 0b110},
      {0b000, 0b010, 0b100, 0b110},
      {0, 1, 2, 3, 4, 5, 6, 7},
  };
  Outcome out;
  if (!uniform_with_flags(run.after_oracle, expected[0])) {
    return {false, "post-oracle state differs"};
  }
  if (run.after_pass.size() != 3) return {false, "expected three passes"};
  for (std::size_t k = 0; k < 3; ++k) {
    if (!uniform_with_flags(run.after_pass[k], expected[k + 1])) {
      return {false, fmt::format("state after pass {} differs", k + 1)};
    }
  }
  out.detail = "post-oracle and 3 pass displays match, final (uniform) x |1>";
  return out;
}

Outcome pairwise_decisions(bool count_only) {
  std::size_t instances = 0;
  for (int n = 1; n <= 10; ++n) {
    const std::uint64_t inputs = std::uint64_t{1} << n;
    for (std::uint64_t m = 0; m <= inputs; ++m) {
      const bool empty = m == inputs;
      const OracleSpec oracle(n, empty ? std::vector<std::uint64_t>{}
                                       : std::vector<std::uint64_t>{m});
      const PairwiseRun run = run_pairwise(oracle);
      ++instances;
      if (count_only) {
        if (run.step4_ops != static_cast<std::uint64_t>(n) ||
            run.final.pass_count != n || run.enumeration_baseline != inputs) {
          return {false, fmt::format("n={} m={}: {} passes vs baseline {}", n, m,
                                     run.step4_ops, run.enumeration_baseline)};
        }
      } else {
        const double p = measure_flag(run.final.state);
        if (p != (empty ? 0.0 : 1.0)) {
          return {false, fmt::format("n={} m={}: flag probability {:.17g}", n, m, p)};
        }
      }
    }
  }
  return {true, count_only
                    ? fmt::format("{} instances, n passes each vs 2^n baseline", instances)
                    : fmt::format("{} instances, probabilities exactly 1/0", instances)};
}

Outcome oracle_equivalence() {
  double worst_gap = 0.0;
  double worst_drift = 0.0;
  int cells = 0;
  for (int n = 1; n <= 8; ++n) {
    for (std::size_t s : {0, 1}) {
      for (double eta : {0.3, 0.1, 0.01}) {
        for (double alpha : {std::ldexp(1.0, n), 10.0 * std::ldexp(1.0, n - 1) / eta}) {
          const NonlinearParams p{kDefaultEpsilon, alpha, eta};
          const double t_max = default_t_max(p.epsilon);
          const Rk4Result rk4 =
              rk4_evolve(post_oracle(n, marked_of(s)), t_max, default_time_step(p.epsilon), p);
          for (const TrajectorySample& sample : rk4.trajectory.samples) {
            worst_gap = std::max(
                worst_gap, std::abs(sample.sigma3 - sigma3_closed_form(sample.t, n, s, p)));
          }
          if (rk4.trajectory.duration() < t_max - 1e-12) {
            return {false, "RK4 window shorter than 2 pi / eps"};
          }
          worst_drift = std::max(worst_drift, rk4.norm_drift);
          ++cells;
        }
      }
    }
  }
  return {worst_gap < 1e-6 && worst_drift < 1e-8,
          fmt::format("{} cells, sup gap {:.3e}, norm drift {:.3e}", cells, worst_gap,
                      worst_drift)};
}

Outcome s0_constancy() {
  double worst = 0.0;
  for (int n = 1; n <= 10; ++n) {
    const NonlinearParams p = default_params(n);
    const double t_max = default_t_max(p.epsilon);
    const double dt = default_time_step(p.epsilon);
    const Trajectory closed =
        dense_closed_form_trajectory(post_oracle(n, {}), p, t_max, dt);
    const Trajectory analytic = closed_form_trajectory(n, 0, p, t_max, dt);
    const Rk4Result rk4 = rk4_evolve(post_oracle(n, {}), t_max, dt, p);
    for (const Trajectory* t : {&closed, &analytic, &rk4.trajectory}) {
      for (const TrajectorySample& sample : t->samples) {
        worst = std::max(worst, std::abs(sample.sigma3 - 1.0));
      }
    }
  }
  return {worst <= 1e-10, fmt::format("n 1..10, max |sigma3 - 1| = {:.3e}", worst)};
}

Outcome dip_depth() {
  double worst = 0.0;
  double worst_sampled = 0.0;
  for (int n : {1, 2, 3, 5, 8, 10, 20, 50}) {
    for (double eta : {0.3, 0.1, 0.01}) {
      const NonlinearParams p = default_params(n, eta);
      const double z0 = initial_polarization(n, 1);
      const double t_star = hold_time(n, 1, p);
      const double direct = -z0 + 2.0 * eta * eta * z0;
      worst = std::max(worst, std::abs(sigma3_closed_form(t_star, n, 1, p) - direct));
      const Trajectory t = closed_form_trajectory(n, 1, p, default_t_max(p.epsilon),
                                                  default_time_step(p.epsilon));
      worst_sampled = std::max(worst_sampled, direct - t.minimum().sigma3);
    }
  }
  const NonlinearParams p10 = default_params(10, 0.01);
  const double min10 = sigma3_closed_form(hold_time(10, 1, p10), 10, 1, p10);
  const bool ok = worst <= 1e-9 && worst_sampled <= 1e-9 && min10 < -0.997;
  return {ok, fmt::format("formula gap {:.3e}, sampled below t* by {:.3e}, n=10 min {:.12f}",
                          worst, worst_sampled, min10)};
}

Outcome no_signaling() {
  double worst = 0.0;
  for (int n = 1; n <= 8; ++n) {
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
      const NonlinearParams p = default_params(n, 0.1);
      const double t_star = hold_time(n, 1, p);
      const std::vector<double> times{0.1, 0.5 * t_star, t_star, 1.7, 2 * t_star, 6.0};
      const LocalityReport r = no_signaling_check(n, OracleSpec(n, {m}), p, times);
      worst = std::max(worst, r.max_input_deviation);
    }
  }
  const LocalityReport mob = signaling_check_mob();
  const QubitLocality& q1 = mob.qubits.front();
  const bool purity_ok = std::abs(q1.purity_before - 0.5) <= 1e-15 &&
                         std::abs(q1.purity_after - 1.0) <= 1e-15;
  return {worst < 1e-12 && purity_ok && mob.verdict == LocalityVerdict::signaling,
          fmt::format("max input deviation {:.3e}; mob qubit-1 purity {:.17g} -> {:.17g}",
                      worst, q1.purity_before, q1.purity_after)};
}

Outcome robustness() {
  int checked = 0;
  for (int n : {3, 8}) {
    const NonlinearParams base = default_params(n);
    for (double fe : {0.9, 1.0, 1.1}) {
      for (double fh : {0.9, 1.0, 1.1}) {
        for (double fa : {0.9, 1.0, 1.1}) {
          const NonlinearParams p{base.epsilon * fe, base.alpha * fa, base.eta * fh};
          const double t_max = default_t_max(p.epsilon);
          const double dt = default_time_step(p.epsilon);
          for (std::size_t s : {0, 1}) {
            const SearchVerdict want = s ? SearchVerdict::nonzero : SearchVerdict::zero;
            const SearchVerdict dense = decide_s(
                dense_closed_form_trajectory(post_oracle(n, marked_of(s)), p, t_max, dt), n);
            const SearchVerdict analytic =
                decide_s(closed_form_trajectory(n, s, p, t_max, dt), n);
            if (dense != want || analytic != want) {
              return {false, fmt::format("n={} s={} eps={} eta={} alpha={}", n, s,
                                         p.epsilon, p.eta, p.alpha)};
            }
            ++checked;
          }
        }
      }
    }
  }
  return {true, fmt::format("{} perturbed cells, all verdicts correct", checked)};
}

Outcome single_qubit() {
  const double eta = kDefaultEta;
  const NonlinearParams p{kDefaultEpsilon, 1e4 / eta, eta};
  const double t_max = 10.0 / p.epsilon;
  const SingleQubitTrajectory ground = single_qubit_evolve({1.0, 0.0}, t_max, 1e-3, p);
  double drift = 0.0;
  for (const SingleQubitSample& s : ground.samples) {
    drift = std::max(drift, std::abs(s.sigma3 - 1.0));
  }
  const double b = 1e-3;
  const SingleQubitTrajectory mixed =
      single_qubit_evolve({std::sqrt(1.0 - b * b), b}, t_max, 1e-3, p);
  double lo = 1.0;
  double hi = -1.0;
  for (const SingleQubitSample& s : mixed.samples) {
    lo = std::min(lo, s.sigma3);
    hi = std::max(hi, s.sigma3);
  }
  const double amplitude = 0.5 * (hi - lo);
  return {drift <= 1e-10 && amplitude > 1e-5 && ground.samples.back().t >= t_max - 1e-12,
          fmt::format("|0> drift {:.3e}; admixture amplitude {:.3e}", drift, amplitude)};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "worked example n=3 S={110}", 1.0, worked_example},
      {2, "pairwise decision, exhaustive n<=10", 30.0, [] { return pairwise_decisions(false); }},
      {3, "operation count n vs 2^n", 30.0, [] { return pairwise_decisions(true); }},
      {4, "closed form vs RK4 oracle", 120.0, oracle_equivalence},
      {5, "s=0 constancy", 120.0, s0_constancy},
      {6, "depth of the s=1 dip at t*", 60.0, dip_depth},
      {7, "no-signaling vs mob transform", 60.0, no_signaling},
      {8, "decision robustness, 27-point cube", 60.0, robustness},
      {9, "single-qubit fixed point", 60.0, single_qubit},
  };
  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = c.check();
    } catch (const std::exception& e) {
      outcome = {false, fmt::format("threw: {}", e.what())};
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (seconds > c.time_limit_s) {
      outcome.passed = false;
      outcome.detail += fmt::format("; over the {:.0f} s budget", c.time_limit_s);
    }
    failures += !outcome.passed;
    fmt::print("{} criterion {}: {} ({:.2f} s) {}\n", outcome.passed ? "PASS" : "FAIL",
               c.id, c.title, seconds, outcome.detail);
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
