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

#include "nlsearch/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "nlsearch/alpipeline.hpp"
#include "nlsearch/kernels.hpp"
#include "nlsearch/locality.hpp"

namespace nlsearch {
namespace {

// Deterministic dense test state; different seeds give unrelated phases.
StateVector patterned_state(int n, int seed) {
  std::vector<Amplitude> amps(std::size_t{2} << n);
  double total = 0.0;
  for (std::size_t k = 0; k < amps.size(); ++k) {
    const double x = static_cast<double>(k);
    amps[k] = {std::cos(0.37 * x * (seed + 1) + 0.11 * seed) + 0.3,
               std::sin(1.13 * x + 0.5 * seed)};
    total += std::norm(amps[k]);
  }
  for (Amplitude& a : amps) a /= std::sqrt(total);
  return StateVector::from_amplitudes(n, std::move(amps));
}

// General single-qubit unitary e^{i delta} Rz(phi) Ry(theta) Rz(lambda).
Matrix2 patterned_gate(int seed) {
  const double theta = 0.41 + 0.73 * seed;
  const double phi = 1.9 * seed - 0.3;
  const double lambda = 0.57 * seed + 0.2;
  const double delta = 0.13 * seed;
  const double c = std::cos(theta / 2.0);
  const double s = std::sin(theta / 2.0);
  const auto e = [](double angle) { return std::polar(1.0, angle); };
  return {e(delta) * c, -e(delta + lambda) * s, e(delta + phi) * s,
          e(delta + phi + lambda) * c};
}

double max_abs_diff(std::span<const Amplitude> a, std::span<const Amplitude> b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

double max_abs_diff(const Matrix2& a, const Matrix2& b) {
  return max_abs_diff(std::span<const Amplitude>(a), std::span<const Amplitude>(b));
}

std::uint64_t marked_example(int n) { return (std::uint64_t{1} << n) - 2; }

SuiteResult finish(std::string name, double tolerance, double worst,
                   std::string detail = {}) {
  return {std::move(name), tolerance, worst, worst <= tolerance, std::move(detail)};
}

SuiteResult flag_operator_suite() {
  double worst = 0.0;
  for (double eta : {1e-3, 0.01, 0.1, 0.3, 0.5, 0.9, 0.999}) {
    const FlagOperator a(eta);
    worst = std::max(worst, max_abs_diff(gates::multiply(a.matrix(), a.matrix()),
                                         gates::identity()));
    worst = std::max(worst, max_abs_diff(gates::adjoint(a.matrix()), a.matrix()));
  }
  return finish("flag-operator", 1e-12, worst, "|A^2 - 1| and |A^dagger - A|");
}

SuiteResult norm_conservation_suite() {
  double worst = 0.0;
  for (int n = 1; n <= 8; ++n) {
    StateVector state = patterned_state(n, n);
    for (int q = 0; q <= n; ++q) {
      state = apply_single_qubit_gate(state, Qubit::from_index(q, n),
                                      patterned_gate(q + n));
      worst = std::max(worst, std::abs(state.norm_squared() - 1.0));
    }
  }
  for (int n = 1; n <= 10; ++n) {
    const PairwiseRun run = run_pairwise(OracleSpec(n, {marked_example(n)}));
    worst = std::max(worst, std::abs(run.after_oracle.norm_squared() - 1.0));
    worst = std::max(worst, std::abs(run.final.state.norm_squared() - 1.0));
  }
  return finish("norm-conservation", kStateTolerance, worst, "|sum |a|^2 - 1|");
}

SuiteResult gate_inverse_suite() {
  double worst = 0.0;
  for (int n = 1; n <= 6; ++n) {
    const StateVector original = patterned_state(n, 3 * n);
    for (int q = 0; q <= n; ++q) {
      const Matrix2 g = patterned_gate(5 * q + n);
      const Qubit qubit = Qubit::from_index(q, n);
      const StateVector back = apply_single_qubit_gate(
          apply_single_qubit_gate(original, qubit, g), qubit, gates::adjoint(g));
      worst = std::max(worst, max_abs_diff(back.amplitudes(), original.amplitudes()));
    }
    const StateVector walsh_back = apply_walsh_inverse(apply_walsh(original));
    worst = std::max(worst, max_abs_diff(walsh_back.amplitudes(), original.amplitudes()));
  }
  return finish("gate-inverse", kStateTolerance, worst, "componentwise |G^-1 G psi - psi|");
}

SuiteResult partial_trace_suite() {
  double worst = 0.0;
  for (int n = 1; n <= 8; ++n) {
    const StateVector state = patterned_state(n, 7 * n + 1);
    for (int q = 0; q <= n; ++q) {
      const Matrix2 raw = kernels::omp::reduce_qubit(
          state.amplitudes(), Qubit::from_index(q, n).bit(n));
      worst = std::max(worst, std::abs(raw[1] - std::conj(raw[2])));
      worst = std::max(worst, std::abs(raw[0] + raw[3] - 1.0));
      const DensityMatrix rho = partial_trace(state, Qubit::from_index(q, n));
      worst = std::max(worst, -rho.eigenvalues().front());
    }
  }
  return finish("partial-trace", kStateTolerance, worst,
                "Hermiticity, trace and positivity defects");
}

SuiteResult kernel_agreement_suite() {
  namespace omp = kernels::omp;
  namespace ref = kernels::serial;
  double worst = 0.0;
  const Matrix2 op = FlagOperator(0.2).matrix();
  for (int n = 1; n <= 8; ++n) {
    const StateVector state = patterned_state(n, 11 * n);
    const auto in = state.amplitudes();
    for (int q = 0; q <= n; ++q) {
      const unsigned bit = Qubit::from_index(q, n).bit(n);
      std::vector<Amplitude> a(in.begin(), in.end()), b = a;
      omp::apply_single_qubit(a, bit, patterned_gate(q));
      ref::apply_single_qubit(b, bit, patterned_gate(q));
      worst = std::max(worst, max_abs_diff(a, b));
      worst = std::max(worst, max_abs_diff(omp::reduce_qubit(in, bit),
                                           ref::reduce_qubit(in, bit)));
    }
    std::vector<Amplitude> a(in.size()), b(in.size());
    omp::rotate_flag(in, a, 0.3, 0.7, op);
    ref::rotate_flag(in, b, 0.3, 0.7, op);
    worst = std::max(worst, max_abs_diff(a, b));
    omp::apply_flag_operator(in, a, op);
    ref::apply_flag_operator(in, b, op);
    worst = std::max(worst, max_abs_diff(a, b));
    worst = std::max(worst, std::abs(omp::flag_expectation(in, op) -
                                     ref::flag_expectation(in, op)));
    worst = std::max(worst, std::abs(omp::norm_squared(in) - ref::norm_squared(in)));
  }
  return finish("kernel-agreement", kStateTolerance, worst, "OpenMP vs serial kernels");
}

SuiteResult pairwise_decision_suite(SuiteResult& op_count) {
  double worst = 0.0;
  double worst_count = 0.0;
  std::size_t cases = 0;
  for (int n = 1; n <= 10; ++n) {
    const std::uint64_t inputs = std::uint64_t{1} << n;
    for (std::uint64_t m = 0; m <= inputs; ++m) {
      const bool empty = m == inputs;
      const OracleSpec oracle(n, empty ? std::vector<std::uint64_t>{}
                                       : std::vector<std::uint64_t>{m});
      const PairwiseRun run = run_pairwise(oracle);
      const double expected = empty ? 0.0 : 1.0;
      worst = std::max(worst, std::abs(measure_flag(run.final.state) - expected));
      worst_count = std::max(
          worst_count, std::abs(static_cast<double>(run.step4_ops) - n));
      ++cases;
    }
  }
  op_count = finish("pairwise-op-count", 0.0, worst_count,
                    fmt::format("|step-4 passes - n| over {} instances", cases));
  return finish("pairwise-decision", 0.0, worst,
                fmt::format("|P(flag=1) - s| over {} instances, n = 1..10", cases));
}

struct DynamicsSuites {
  SuiteResult oracle_equivalence;
  SuiteResult conservation;
};

DynamicsSuites dynamics_suites(const Propagator& propagate) {
  double sigma_gap = 0.0;
  double state_gap = 0.0;
  double drift = 0.0;
  std::string worst_cell;
  for (int n = 1; n <= 8; ++n) {
    for (std::size_t s : {std::size_t{0}, std::size_t{1}}) {
      const OracleSpec oracle(n, s == 0 ? std::vector<std::uint64_t>{}
                                        : std::vector<std::uint64_t>{marked_example(n)});
      const StateVector initial = apply_oracle(apply_walsh(init_state(n)), oracle);
      for (double eta : {0.3, 0.1, 0.01}) {
        for (double alpha : {std::ldexp(1.0, n), 10.0 * std::ldexp(1.0, n - 1) / eta}) {
          const NonlinearParams p{1.0, alpha, eta};
          const double t_max = default_t_max(p.epsilon);
          const double dt = default_time_step(p.epsilon);
          const Rk4Result rk4 = rk4_evolve(initial, t_max, dt, p);
          for (const TrajectorySample& sample : rk4.trajectory.samples) {
            const double gap =
                std::abs(sample.sigma3 - flag_sigma3(propagate(initial, sample.t, p)));
            if (gap > sigma_gap) {
              sigma_gap = gap;
              worst_cell = fmt::format("n={} s={} eta={} alpha={}", n, s, eta, alpha);
            }
          }
          // States at a quarter period, where the sine term is large.
          const Rk4Result quarter = rk4_evolve(initial, t_max / 4.0, dt, p);
          const StateVector closed =
              propagate(initial, quarter.trajectory.duration(), p);
          state_gap = std::max(
              state_gap, max_abs_diff(quarter.final_amplitudes, closed.amplitudes()));
          drift = std::max({drift, rk4.norm_drift, rk4.generator_drift});
        }
      }
    }
  }
  const double worst = std::max(sigma_gap, state_gap);
  return {finish("oracle-equivalence", 1e-6, worst,
                 fmt::format("sup <sigma3> gap {:.3e} (worst at {}), state gap {:.3e}",
                             sigma_gap, worst_cell, state_gap)),
          finish("conservation", 1e-8, drift, "RK4 norm and <1 (x) A> drift")};
}

SuiteResult formula_propagator_suite(const Propagator& propagate) {
  double worst = 0.0;
  for (int n = 1; n <= 10; ++n) {
    for (std::size_t s : {std::size_t{0}, std::size_t{1}}) {
      const OracleSpec oracle(n, s == 0 ? std::vector<std::uint64_t>{}
                                        : std::vector<std::uint64_t>{marked_example(n)});
      const StateVector initial = apply_oracle(apply_walsh(init_state(n)), oracle);
      for (double eta : {0.3, 0.01}) {
        const NonlinearParams p = default_params(n, eta);
        for (double t : {0.0, 0.3, 1.1, 2.5, 4.0, 6.2}) {
          worst = std::max(worst, std::abs(flag_sigma3(propagate(initial, t, p)) -
                                           sigma3_closed_form(t, n, s, p)));
        }
      }
    }
  }
  return finish("formula-propagator", kStateTolerance, worst,
                "Tr(rho_flag(t) sigma3) vs closed-form <sigma3>");
}

SuiteResult analytic_dense_suite() {
  double worst = 0.0;
  for (int n = 1; n <= 10; ++n) {
    for (std::size_t s : {std::size_t{0}, std::size_t{1}}) {
      const OracleSpec oracle(n, s == 0 ? std::vector<std::uint64_t>{}
                                        : std::vector<std::uint64_t>{marked_example(n)});
      const StateVector initial = apply_oracle(apply_walsh(init_state(n)), oracle);
      const NonlinearParams p = default_params(n, 0.1);
      const double t_max = default_t_max(p.epsilon);
      const double dt = 1e-2 * t_max;
      const Trajectory dense = dense_closed_form_trajectory(initial, p, t_max, dt);
      const Trajectory analytic = closed_form_trajectory(n, s, p, t_max, dt);
      for (std::size_t k = 0; k < dense.samples.size(); ++k) {
        worst = std::max(worst,
                         std::abs(dense.samples[k].sigma3 - analytic.samples[k].sigma3));
      }
    }
  }
  return finish("analytic-dense", kStateTolerance, worst,
                "dense-vector vs (n, s)-only trajectory");
}

SuiteResult omega_forms_suite() {
  double worst = 0.0;
  for (int n : {1, 2, 3, 8, 20, 50}) {
    for (std::size_t s : {std::size_t{0}, std::size_t{1}, std::size_t{2}}) {
      if (n == 1 && s == 2) continue;
      for (double eta : {0.3, 0.1, 0.01}) {
        const NonlinearParams p = default_params(n, eta);
        worst = std::max(worst, std::abs(std::abs(omega_trace_form(n, s, p)) -
                                         omega_displayed_form(n, s, p)));
      }
    }
  }
  return finish("omega-forms", 1e-14, worst, "| |trace form| - positive form |");
}

SuiteResult no_signaling_suite(const Propagator& propagate) {
  double worst = 0.0;
  double smallest_flag_motion = 1.0;
  for (int n = 1; n <= 10; ++n) {
    const OracleSpec oracle(n, {marked_example(n)});
    const StateVector initial = apply_oracle(apply_walsh(init_state(n)), oracle);
    const NonlinearParams p = default_params(n, 0.1);
    const double t_star = hold_time(n, 1, p);
    std::vector<StateVector> evolved;
    std::vector<double> times{0.1, t_star, 2.0 * t_star};
    for (double t : times) evolved.push_back(propagate(initial, t, p));
    const LocalityReport report =
        compare_reductions("local-nonlinear", initial, evolved, times);
    worst = std::max(worst, report.max_input_deviation);
    if (n >= 2) {
      smallest_flag_motion = std::min(smallest_flag_motion, report.qubits.back().max_deviation);
    }
  }
  // The flag itself must move, otherwise the check is vacuous.
  const double flag_still = smallest_flag_motion > 1e-3 ? 0.0 : 1.0;
  return finish("no-signaling", kStateTolerance, std::max(worst, flag_still),
                fmt::format("input-qubit deviation {:.3e}, least flag motion {:.3e}",
                            worst, smallest_flag_motion));
}

SuiteResult mob_signaling_suite() {
  const LocalityReport report = signaling_check_mob();
  const QubitLocality& first = report.qubits.front();
  const double worst = std::max({std::abs(first.purity_before - 0.5),
                                 std::abs(first.purity_after - 1.0),
                                 report.verdict == LocalityVerdict::signaling ? 0.0 : 1.0});
  return finish("mob-signaling", 1e-15, worst,
                fmt::format("qubit-1 purity {:.17g} -> {:.17g}, verdict {}",
                            first.purity_before, first.purity_after,
                            to_string(report.verdict)));
}

}  // namespace

Propagator sign_flipped_propagator() {
  return [](const StateVector& state, double t, const NonlinearParams& p) {
    return closed_form_evolve(state, -t, p);
  };
}

std::vector<std::string> verification_suite_names() {
  return {"flag-operator",      "norm-conservation",  "gate-inverse",
          "partial-trace",      "kernel-agreement",   "pairwise-decision",
          "pairwise-op-count",  "oracle-equivalence", "conservation",
          "formula-propagator", "analytic-dense",     "omega-forms",
          "no-signaling",       "mob-signaling"};
}

std::vector<SuiteResult> run_verification(const VerifyOptions& options) {
  const Propagator propagate =
      options.propagator ? options.propagator : Propagator(closed_form_evolve);
  std::vector<SuiteResult> results;
  results.push_back(flag_operator_suite());
  results.push_back(norm_conservation_suite());
  results.push_back(gate_inverse_suite());
  results.push_back(partial_trace_suite());
  results.push_back(kernel_agreement_suite());
  SuiteResult op_count;
  results.push_back(pairwise_decision_suite(op_count));
  results.push_back(std::move(op_count));
  DynamicsSuites dynamics = dynamics_suites(propagate);
  results.push_back(std::move(dynamics.oracle_equivalence));
  results.push_back(std::move(dynamics.conservation));
  results.push_back(formula_propagator_suite(propagate));
  results.push_back(analytic_dense_suite());
  results.push_back(omega_forms_suite());
  results.push_back(no_signaling_suite(propagate));
  results.push_back(mob_signaling_suite());
  return results;
}

}  // namespace nlsearch
