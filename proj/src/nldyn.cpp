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

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <span>

#include <fmt/format.h>

namespace nlsearch {
namespace {

constexpr Amplitude kMinusI{0.0, -1.0};

// Calls observe(t, psi) at every grid time, integrating between them with
// classical RK4. Returns the largest |<psi|psi> - 1| seen.
double integrate_rk4(
    std::vector<Amplitude>& psi, std::span<const double> grid,
    const NonlinearParams& p,
    const std::function<void(double, std::span<const Amplitude>)>& observe) {
  const FlagOperator a(p.eta);
  const Matrix2 shifted = a.shifted();
  const std::size_t size = psi.size();
  std::array<std::vector<Amplitude>, 4> applied;
  for (auto& v : applied) v.resize(size);
  std::array<Amplitude, 4> coef{};
  std::vector<Amplitude> stage(size);

  // k = coef * (1 (x) A) psi with coef = -i eps tanh(alpha <1 (x) (A - eta)>).
  auto derivative = [&](std::span<const Amplitude> at, int k) {
    const double arg = kernels::omp::flag_expectation(at, shifted).real();
    coef[k] = kMinusI * (p.epsilon * std::tanh(p.alpha * arg));
    kernels::omp::apply_flag_operator(at, applied[k], a.matrix());
  };

  double drift = std::abs(kernels::omp::norm_squared(psi) - 1.0);
  observe(grid.front(), psi);
  for (std::size_t step = 1; step < grid.size(); ++step) {
    const double h = grid[step] - grid[step - 1];
    derivative(psi, 0);
    kernels::omp::add_scaled(psi, 0.5 * h * coef[0], applied[0], stage);
    derivative(stage, 1);
    kernels::omp::add_scaled(psi, 0.5 * h * coef[1], applied[1], stage);
    derivative(stage, 2);
    kernels::omp::add_scaled(psi, h * coef[2], applied[2], stage);
    derivative(stage, 3);
    const std::array<double, 4> weights{1.0, 2.0, 2.0, 1.0};
    for (int k = 0; k < 4; ++k) {
      kernels::omp::add_scaled(psi, h / 6.0 * weights[k] * coef[k], applied[k], psi);
    }

    drift = std::max(drift, std::abs(kernels::omp::norm_squared(psi) - 1.0));
    if (drift > kMaxNormDrift) {
      throw NumericalError(fmt::format(
          "RK4 norm drift {:.3e} exceeds {:.0e} at t = {:.6g}; use a smaller "
          "time step than {:.6g}",
          drift, kMaxNormDrift, grid[step], h));
    }
    observe(grid[step], psi);
  }
  return drift;
}

double normalized_sigma3(std::span<const Amplitude> psi) {
  const Matrix2 rho = kernels::omp::reduce_qubit(psi, 0);
  const double p0 = rho[0].real();
  const double p1 = rho[3].real();
  return (p0 - p1) / (p0 + p1);
}

}  // namespace

void NonlinearParams::validate() const {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw std::invalid_argument(fmt::format("epsilon must be > 0, got {}", epsilon));
  }
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw std::invalid_argument(fmt::format("alpha must be > 0, got {}", alpha));
  }
  if (!(eta > 0.0 && eta < 1.0)) {
    throw std::invalid_argument(fmt::format("eta must lie in (0, 1), got {}", eta));
  }
}

double default_alpha(int n, double eta) {
  return std::max(std::ldexp(1.0, n), 10.0 * std::ldexp(1.0, n - 1) / eta);
}

NonlinearParams default_params(int n, double eta, double epsilon) {
  return {epsilon, default_alpha(n, eta), eta};
}

double default_t_max(double epsilon) { return 2.0 * std::numbers::pi / epsilon; }

double default_time_step(double epsilon) { return 1e-3 * default_t_max(epsilon); }

FlagOperator::FlagOperator(double eta) : eta_(eta) {
  if (!(eta > 0.0 && eta < 1.0)) {
    throw std::invalid_argument(fmt::format("eta must lie in (0, 1), got {}", eta));
  }
  const double off = std::sqrt(1.0 - eta * eta);
  matrix_ = {eta, off, off, -eta};
}

Matrix2 FlagOperator::shifted() const {
  return {matrix_[0] - eta_, matrix_[1], matrix_[2], matrix_[3] - eta_};
}

DensityMatrix flag_reduction(int n, std::size_t s) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  const double marked = std::ldexp(static_cast<double>(s), -n);
  if (marked > 1.0) throw std::invalid_argument("s exceeds 2^n");
  const std::array<double, 2> weights{1.0 - marked, marked};
  return DensityMatrix::diagonal(weights);
}

double initial_polarization(int n, std::size_t s) {
  return 1.0 - std::ldexp(static_cast<double>(s), 1 - n);
}

double omega_trace_form(int n, std::size_t s, const NonlinearParams& p) {
  const FlagOperator a(p.eta);
  const Matrix2 shifted = a.shifted();
  const double arg = flag_reduction(n, s).expectation(shifted).real();
  return p.epsilon * std::tanh(p.alpha * arg);
}

double omega_displayed_form(int n, std::size_t s, const NonlinearParams& p) {
  return p.epsilon *
         std::tanh(p.alpha * p.eta * std::ldexp(static_cast<double>(s), 1 - n));
}

double omega(int n, std::size_t s, const NonlinearParams& p) {
  return std::abs(omega_trace_form(n, s, p));
}

double omega_of_state(const StateVector& state, const NonlinearParams& p) {
  const FlagOperator a(p.eta);
  const double arg =
      partial_trace(state, Qubit::flag()).expectation(a.shifted()).real();
  return p.epsilon * std::tanh(p.alpha * arg);
}

StateVector closed_form_evolve(const StateVector& state, double t,
                               const NonlinearParams& p) {
  p.validate();
  const double w = omega_of_state(state, p);
  const FlagOperator a(p.eta);
  std::vector<Amplitude> out(state.size());
  kernels::omp::rotate_flag(state.amplitudes(), out, std::cos(w * t),
                            std::sin(w * t), a.matrix());
  return StateVector::from_amplitudes(state.n_inputs(), std::move(out));
}

double sigma3_closed_form(double t, int n, std::size_t s,
                          const NonlinearParams& p) {
  const double z0 = initial_polarization(n, s);
  const double w = omega(n, s, p);
  const double sine = std::sin(w * t);
  return z0 * std::cos(2.0 * w * t) + 2.0 * p.eta * p.eta * z0 * sine * sine;
}

double flag_sigma3(const StateVector& state) {
  return partial_trace(state, Qubit::flag()).expectation(gates::sigma3()).real();
}

const char* to_string(TrajectorySource source) {
  return source == TrajectorySource::rk4 ? "rk4" : "closed-form";
}

TrajectorySample Trajectory::minimum() const {
  if (samples.empty()) throw std::logic_error("empty trajectory");
  return *std::min_element(samples.begin(), samples.end(),
                           [](const auto& a, const auto& b) {
                             return a.sigma3 < b.sigma3;
                           });
}

std::vector<double> time_grid(double t_max, double dt) {
  if (!(dt > 0.0) || !(t_max >= dt)) {
    throw std::invalid_argument(
        fmt::format("need dt > 0 and t_max >= dt (t_max = {}, dt = {})", t_max, dt));
  }
  const double ratio = t_max / dt;
  const double nearest = std::round(ratio);
  const auto steps = static_cast<std::size_t>(
      std::abs(ratio - nearest) <= 1e-9 * nearest ? nearest : std::ceil(ratio));
  std::vector<double> grid(steps + 1);
  for (std::size_t k = 0; k <= steps; ++k) grid[k] = static_cast<double>(k) * dt;
  return grid;
}

Trajectory closed_form_trajectory(int n, std::size_t s,
                                  const NonlinearParams& p, double t_max,
                                  double dt) {
  p.validate();
  Trajectory traj{p, n, s, TrajectorySource::closed_form, {}};
  for (double t : time_grid(t_max, dt)) {
    traj.samples.push_back({t, sigma3_closed_form(t, n, s, p)});
  }
  return traj;
}

Trajectory dense_closed_form_trajectory(const StateVector& state,
                                        const NonlinearParams& p, double t_max,
                                        double dt) {
  p.validate();
  const std::vector<double> grid = time_grid(t_max, dt);
  const Matrix2 rho0 = kernels::omp::reduce_qubit(state.amplitudes(), 0);
  const auto s = static_cast<std::size_t>(
      std::llround(rho0[3].real() * static_cast<double>(state.input_count())));
  Trajectory traj{p, state.n_inputs(), s, TrajectorySource::closed_form, {}};

  const double w = omega_of_state(state, p);
  const FlagOperator a(p.eta);
  std::vector<Amplitude> evolved(state.size());
  for (double t : grid) {
    kernels::omp::rotate_flag(state.amplitudes(), evolved, std::cos(w * t),
                              std::sin(w * t), a.matrix());
    const Matrix2 rho = kernels::omp::reduce_qubit(evolved, 0);
    traj.samples.push_back({t, rho[0].real() - rho[3].real()});
  }
  return traj;
}

Rk4Result rk4_evolve(const StateVector& state, double t_max, double dt,
                     const NonlinearParams& p) {
  p.validate();
  const std::vector<double> grid = time_grid(t_max, dt);
  const FlagOperator a(p.eta);
  const Matrix2 rho0 = kernels::omp::reduce_qubit(state.amplitudes(), 0);
  const auto s = static_cast<std::size_t>(
      std::llround(rho0[3].real() * static_cast<double>(state.input_count())));

  Rk4Result result{{p, state.n_inputs(), s, TrajectorySource::rk4, {}},
                   {state.amplitudes().begin(), state.amplitudes().end()},
                   0.0,
                   0.0};
  result.trajectory.samples.reserve(grid.size());
  const double generator0 =
      kernels::omp::flag_expectation(state.amplitudes(), a.matrix()).real();
  result.norm_drift = integrate_rk4(
      result.final_amplitudes, grid, p,
      [&](double t, std::span<const Amplitude> psi) {
        result.trajectory.samples.push_back({t, normalized_sigma3(psi)});
        const double generator =
            kernels::omp::flag_expectation(psi, a.matrix()).real();
        result.generator_drift =
            std::max(result.generator_drift, std::abs(generator - generator0));
      });
  return result;
}

SingleQubitTrajectory single_qubit_evolve(const std::array<Amplitude, 2>& psi,
                                          double t_max, double dt,
                                          const NonlinearParams& p) {
  p.validate();
  if (std::abs(std::norm(psi[0]) + std::norm(psi[1]) - 1.0) > kStateTolerance) {
    throw std::invalid_argument("single-qubit state must have unit norm");
  }
  const std::vector<double> grid = time_grid(t_max, dt);
  const FlagOperator a(p.eta);
  const Matrix2 shifted = a.shifted();

  SingleQubitTrajectory traj{p, {}, 0.0};
  traj.samples.reserve(grid.size());
  std::vector<Amplitude> amps{psi[0], psi[1]};
  traj.norm_drift = integrate_rk4(
      amps, grid, p, [&](double t, std::span<const Amplitude> v) {
        const double arg = kernels::omp::flag_expectation(v, shifted).real();
        traj.samples.push_back({t, normalized_sigma3(v), arg,
                                p.epsilon * std::tanh(p.alpha * arg)});
      });
  return traj;
}

const char* to_string(SearchVerdict verdict) {
  return verdict == SearchVerdict::nonzero ? "nonzero" : "zero";
}

double decision_margin(int n) { return std::ldexp(1.0, -n); }

double minimum_decision_time(int n, const NonlinearParams& p) {
  return std::numbers::pi / (2.0 * omega(n, 1, p));
}

SearchVerdict decide_s(const Trajectory& trajectory, int n) {
  const double required = minimum_decision_time(n, trajectory.params);
  if (trajectory.samples.empty() ||
      trajectory.duration() < required * (1.0 - 1e-12)) {
    throw std::invalid_argument(fmt::format(
        "trajectory covers t <= {:.6g}; deciding s needs at least {:.6g}",
        trajectory.duration(), required));
  }
  return trajectory.minimum().sigma3 < 1.0 - decision_margin(n)
             ? SearchVerdict::nonzero
             : SearchVerdict::zero;
}

double hold_time(int n, std::size_t s, const NonlinearParams& p) {
  const double w = s == 0 ? 0.0 : omega(n, s, p);
  if (w == 0.0) {
    throw NoOscillation("no oscillation: omega = 0, the flag never moves");
  }
  return std::numbers::pi / (2.0 * w);
}

}  // namespace nlsearch
