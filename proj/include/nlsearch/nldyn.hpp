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

// Local modification of Step 4: a nonlinear Schrodinger dynamics applied to
// the flag qubit alone,
//
//   i d|Psi>/dt = eps * tanh(alpha * <Psi| 1 (x) (A - eta 1) |Psi>) 1 (x) A |Psi>,
//   A = eta (|0><0| - |1><1|) + sqrt(1 - eta^2) (|0><1| + |1><0|).
//
// Because A^2 = 1 and <1 (x) A> is a constant of motion, the flow is a
// rotation exp(-i omega t 1 (x) A) with omega fixed by the initial flag
// reduced density matrix. The closed form and an RK4 integrator that
// re-evaluates the tanh argument every stage are both provided so each can
// check the other.

#include <array>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "nlsearch/qstate.hpp"

namespace nlsearch {

struct NonlinearParams {
  double epsilon = 1.0;
  double alpha = 1.0;
  double eta = 0.01;

  /// Throws std::invalid_argument unless eps > 0, alpha > 0, 0 < eta < 1.
  void validate() const;
};

inline constexpr double kDefaultEta = 0.01;
inline constexpr double kDefaultEpsilon = 1.0;
/// Integrations whose norm drifts further than this are rejected.
inline constexpr double kMaxNormDrift = 1e-6;

/// max(2^n, 10 * 2^(n-1) / eta): keeps the s = 1 tanh argument >= 10.
double default_alpha(int n, double eta);
NonlinearParams default_params(int n, double eta = kDefaultEta,
                               double epsilon = kDefaultEpsilon);
/// One period 2 pi / eps.
double default_t_max(double epsilon);
/// 1e-3 of a period.
double default_time_step(double epsilon);

class FlagOperator {
 public:
  explicit FlagOperator(double eta);

  double eta() const { return eta_; }
  const Matrix2& matrix() const { return matrix_; }
  /// A - eta 1, the operator under the tanh.
  Matrix2 shifted() const;

 private:
  double eta_;
  Matrix2 matrix_;
};

/// Flag reduction after Steps 1-3: diag((2^n - s)/2^n, s/2^n).
DensityMatrix flag_reduction(int n, std::size_t s);

/// (2^(n-1) - s) / 2^(n-1), the initial <sigma3>.
double initial_polarization(int n, std::size_t s);

/// eps * tanh(alpha * Tr rho (A - eta 1)) with rho = flag_reduction(n, s).
/// Negative for s >= 1.
double omega_trace_form(int n, std::size_t s, const NonlinearParams& p);
/// eps * tanh(alpha * eta * s / 2^(n-1)).
double omega_displayed_form(int n, std::size_t s, const NonlinearParams& p);
/// |omega|. Observables depend on omega only through even functions.
double omega(int n, std::size_t s, const NonlinearParams& p);
/// Signed frequency of the flow started at `state`.
double omega_of_state(const StateVector& state, const NonlinearParams& p);

/// (cos wt - i sin wt 1 (x) A) |state>, w taken from the initial flag reduction.
StateVector closed_form_evolve(const StateVector& state, double t,
                               const NonlinearParams& p);

/// z0 cos(2wt) + 2 eta^2 z0 sin^2(wt), z0 = initial_polarization(n, s).
double sigma3_closed_form(double t, int n, std::size_t s,
                          const NonlinearParams& p);

/// <1 (x) sigma3> read off the flag reduction of `state`.
double flag_sigma3(const StateVector& state);

enum class TrajectorySource { closed_form, rk4 };

const char* to_string(TrajectorySource source);

struct TrajectorySample {
  double t = 0.0;
  double sigma3 = 0.0;

  friend bool operator==(const TrajectorySample&, const TrajectorySample&) = default;
};

struct Trajectory {
  NonlinearParams params;
  int n = 0;
  std::size_t s = 0;
  TrajectorySource source = TrajectorySource::closed_form;
  std::vector<TrajectorySample> samples;

  double duration() const { return samples.empty() ? 0.0 : samples.back().t; }
  /// Smallest sample and the time it occurs at.
  TrajectorySample minimum() const;
};

/// Sample times k * dt for k = 0..K, K = ceil(t_max / dt) up to rounding.
std::vector<double> time_grid(double t_max, double dt);

/// Analytic path: needs only (n, s), so n is not limited by the dense cap.
Trajectory closed_form_trajectory(int n, std::size_t s,
                                  const NonlinearParams& p, double t_max,
                                  double dt);

/// Dense path: evolves the full register and reduces the flag at each sample.
Trajectory dense_closed_form_trajectory(const StateVector& state,
                                        const NonlinearParams& p, double t_max,
                                        double dt);

struct Rk4Result {
  Trajectory trajectory;
  /// Final amplitudes as integrated, not renormalized.
  std::vector<Amplitude> final_amplitudes;
  /// max_t | <Psi|Psi> - 1 |
  double norm_drift = 0.0;
  /// max_t | <1 (x) A>(t) - <1 (x) A>(0) |
  double generator_drift = 0.0;
};

/// Classical RK4 on the full equation of motion. Samples carry the
/// norm-corrected <sigma3>; the state itself is never rescaled.
/// Throws NumericalError when the norm drifts beyond kMaxNormDrift.
Rk4Result rk4_evolve(const StateVector& state, double t_max, double dt,
                     const NonlinearParams& p);

struct SingleQubitSample {
  double t = 0.0;
  double sigma3 = 0.0;
  /// <psi|A - eta 1|psi>, the expression under tanh before the gain alpha.
  double tanh_argument = 0.0;
  /// eps * tanh(alpha * tanh_argument)
  double frequency = 0.0;
};

struct SingleQubitTrajectory {
  NonlinearParams params;
  std::vector<SingleQubitSample> samples;
  double norm_drift = 0.0;
};

/// RK4 on the 1-qubit equation. `psi` must be a unit vector.
SingleQubitTrajectory single_qubit_evolve(const std::array<Amplitude, 2>& psi,
                                          double t_max, double dt,
                                          const NonlinearParams& p);

enum class SearchVerdict { zero, nonzero };

const char* to_string(SearchVerdict verdict);

/// 1 / 2^n
double decision_margin(int n);

/// Minimum duration a trajectory needs before decide_s accepts it:
/// pi / (2 omega(n, 1, p)).
double minimum_decision_time(int n, const NonlinearParams& p);

/// nonzero iff min <sigma3> < 1 - 1/2^n. Throws std::invalid_argument when
/// the trajectory is shorter than minimum_decision_time.
SearchVerdict decide_s(const Trajectory& trajectory, int n);

/// No finite hold time exists (s = 0).
class NoOscillation : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// pi / (2 omega): first minimizer of the closed-form <sigma3>.
double hold_time(int n, std::size_t s, const NonlinearParams& p);

}  // namespace nlsearch
