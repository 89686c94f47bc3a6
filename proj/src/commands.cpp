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

#include "nlsearch/commands.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

#include "nlsearch/alpipeline.hpp"
#include "nlsearch/locality.hpp"

namespace nlsearch {
namespace {

constexpr int kAnalyticInputCap = 1000;

std::string_view trim(std::string_view s) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  return s;
}

std::uint64_t parse_unsigned(std::string_view token, int base) {
  std::uint64_t value = 0;
  const auto [end, ec] =
      std::from_chars(token.data(), token.data() + token.size(), value, base);
  if (ec != std::errc{} || end != token.data() + token.size() || token.empty()) {
    throw UsageError(fmt::format("cannot parse marked value '{}'", token));
  }
  return value;
}

StateVector post_oracle_state(int n, const std::vector<std::uint64_t>& marked) {
  return apply_oracle(apply_walsh(init_state(n)), OracleSpec(n, marked));
}

std::vector<std::uint64_t> representative_marked(std::size_t s) {
  std::vector<std::uint64_t> marked(s);
  std::iota(marked.begin(), marked.end(), std::uint64_t{0});
  return marked;
}

Json diagnostics_for(const RunConfig& config) {
  Json warnings = Json::array();
  if (config.s() >= 2) {
    warnings.push_back(fmt::format(
        "s = {} exceeds the single-marked-input assumption; the pairwise "
        "passes OR-propagate flags and the local dynamics cannot tell s apart "
        "beyond s != 0",
        config.s()));
  }
  if (config.analytic_s && config.rk4_oracle) {
    warnings.push_back(
        "RK4 oracle ran on a representative register marking inputs 0..s-1");
  }
  return Json{{"warnings", std::move(warnings)},
              {"notes", Json::array({kOmegaSignNote, kHoldTimeNote})}};
}

Json envelope(Json config, Json results, Json diagnostics) {
  return Json{{"config", std::move(config)},
              {"results", std::move(results)},
              {"diagnostics", std::move(diagnostics)},
              {"version", kVersion}};
}

Json pairwise_results(const RunConfig& config) {
  const OracleSpec oracle(config.n, *config.marked);
  const PairwiseRun run = run_pairwise(oracle);
  const double p = measure_flag(run.final.state);
  return Json{
      {"s", oracle.s()},
      {"op_count",
       {{"walsh_gates", config.n},
        {"oracle_queries", 1},
        {"step4_passes", run.step4_ops},
        {"total", run.final.op_count}}},
      {"enumeration_baseline", run.enumeration_baseline},
      {"flag_probability_after_oracle", measure_flag(run.after_oracle)},
      {"flag_probability", p},
      {"decision", to_string(p > 0.5 ? SearchVerdict::nonzero : SearchVerdict::zero)}};
}

Trajectory closed_trajectory(const RunConfig& config) {
  const NonlinearParams p = config.params();
  if (config.marked) {
    return dense_closed_form_trajectory(post_oracle_state(config.n, *config.marked),
                                        p, config.resolved_t_max(),
                                        config.resolved_dt());
  }
  return closed_form_trajectory(config.n, config.s(), p, config.resolved_t_max(),
                                config.resolved_dt());
}

Rk4Result rk4_trajectory(const RunConfig& config) {
  const auto marked =
      config.marked ? *config.marked : representative_marked(config.s());
  return rk4_evolve(post_oracle_state(config.n, marked), config.resolved_t_max(),
                    config.resolved_dt(), config.params());
}

double sup_gap(const Trajectory& a, const Trajectory& b) {
  double gap = 0.0;
  for (std::size_t k = 0; k < std::min(a.samples.size(), b.samples.size()); ++k) {
    gap = std::max(gap, std::abs(a.samples[k].sigma3 - b.samples[k].sigma3));
  }
  return gap;
}

Json local_results(const RunConfig& config) {
  const NonlinearParams p = config.params();
  const std::size_t s = config.s();
  const Trajectory closed = closed_trajectory(config);
  SearchVerdict verdict;
  try {
    verdict = decide_s(closed, config.n);
  } catch (const std::invalid_argument& e) {
    throw UsageError(fmt::format("{} (raise --t-max)", e.what()));
  }
  const TrajectorySample low = closed.minimum();
  Json hold = nullptr;
  Json sigma3_at_hold = nullptr;
  if (s > 0) {
    const double t_star = hold_time(config.n, s, p);
    hold = t_star;
    sigma3_at_hold = sigma3_closed_form(t_star, config.n, s, p);
  }
  Json results{{"path", config.marked ? "dense" : "analytic"},
               {"s", s},
               {"omega", omega(config.n, s, p)},
               {"omega_trace_form", omega_trace_form(config.n, s, p)},
               {"omega_positive_form", omega_displayed_form(config.n, s, p)},
               {"initial_sigma3", closed.samples.front().sigma3},
               {"min_sigma3", low.sigma3},
               {"t_at_min", low.t},
               {"samples", closed.samples.size()},
               {"decision_margin", decision_margin(config.n)},
               {"decision", to_string(verdict)},
               {"hold_time", hold},
               {"sigma3_at_hold_time", sigma3_at_hold}};
  if (config.rk4_oracle) {
    const Rk4Result rk4 = rk4_trajectory(config);
    results["rk4"] = Json{{"sup_gap", sup_gap(closed, rk4.trajectory)},
                          {"norm_drift", rk4.norm_drift},
                          {"generator_drift", rk4.generator_drift},
                          {"decision", to_string(decide_s(rk4.trajectory, config.n))}};
  }
  return results;
}

}  // namespace

Algorithm parse_algorithm(std::string_view name) {
  if (name == "pairwise") return Algorithm::pairwise;
  if (name == "local") return Algorithm::local;
  if (name == "both") return Algorithm::both;
  throw UsageError(fmt::format("unknown algorithm '{}'", name));
}

const char* to_string(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::pairwise: return "pairwise";
    case Algorithm::local: return "local";
    case Algorithm::both: return "both";
  }
  return "?";
}

std::vector<std::uint64_t> parse_marked(std::string_view text, int n) {
  std::vector<std::uint64_t> marked;
  text = trim(text);
  if (text.empty() || text == "none") return marked;
  while (true) {
    const std::size_t comma = text.find(',');
    const std::string_view token = trim(text.substr(0, comma));
    const bool binary_digits =
        !token.empty() && token.find_first_not_of("01") == std::string_view::npos;
    if (token.starts_with("0b")) {
      marked.push_back(parse_unsigned(token.substr(2), 2));
    } else if (binary_digits && static_cast<int>(token.size()) == n) {
      marked.push_back(parse_unsigned(token, 2));
    } else {
      marked.push_back(parse_unsigned(token, 10));
    }
    if (comma == std::string_view::npos) break;
    text = text.substr(comma + 1);
  }
  return marked;
}

void RunConfig::validate() const {
  if (marked.has_value() == analytic_s.has_value()) {
    throw UsageError("give exactly one of --marked and --s");
  }
  if (analytic_s && algorithm != Algorithm::local) {
    throw UsageError("--s (analytic path) is only valid with --algo local");
  }
  if (n < 1 || n > kAnalyticInputCap) {
    throw UsageError(fmt::format("--n must lie in [1, {}]", kAnalyticInputCap));
  }
  if (marked && n > kDenseInputCap) {
    throw UsageError(fmt::format(
        "n = {} exceeds the dense cap of {} input qubits; use --algo local "
        "with --s for the analytic path",
        n, kDenseInputCap));
  }
  if (analytic_s && n < 64 && *analytic_s > (std::uint64_t{1} << n)) {
    throw UsageError("--s exceeds 2^n");
  }
  if (analytic_s && rk4_oracle && n > kDenseInputCap) {
    throw UsageError(fmt::format(
        "the RK4 oracle needs a dense register (n <= {})", kDenseInputCap));
  }
  if (marked) {
    try {
      OracleSpec(n, *marked);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }
  try {
    params().validate();
    time_grid(resolved_t_max(), resolved_dt());
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

NonlinearParams RunConfig::params() const {
  return {epsilon, alpha ? *alpha : default_alpha(n, eta), eta};
}

double RunConfig::resolved_t_max() const {
  return t_max ? *t_max : default_t_max(epsilon);
}

double RunConfig::resolved_dt() const {
  return dt ? *dt : default_time_step(epsilon);
}

std::size_t RunConfig::s() const {
  if (analytic_s) return *analytic_s;
  if (!marked) return 0;
  return OracleSpec(n, *marked).s();
}

Json RunConfig::to_json() const {
  const NonlinearParams p = params();
  Json marked_json = nullptr;
  if (marked) {
    std::vector<std::uint64_t> sorted = OracleSpec(n, *marked).marked();
    marked_json = sorted;
  }
  return Json{{"n", n},
              {"marked", std::move(marked_json)},
              {"s", s()},
              {"analytic", analytic_s.has_value()},
              {"algorithm", to_string(algorithm)},
              {"epsilon", p.epsilon},
              {"eta", p.eta},
              {"alpha", p.alpha},
              {"alpha_mode", alpha ? "explicit" : "auto"},
              {"t_max", resolved_t_max()},
              {"dt", resolved_dt()},
              {"oracle", rk4_oracle ? "rk4" : "none"}};
}

Json run_report(const RunConfig& config) {
  config.validate();
  Json results = Json::object();
  if (config.algorithm != Algorithm::local) results["pairwise"] = pairwise_results(config);
  if (config.algorithm != Algorithm::pairwise) results["local"] = local_results(config);
  return envelope(config.to_json(), std::move(results), diagnostics_for(config));
}

TraceResult run_trace(const RunConfig& config) {
  config.validate();
  if (config.algorithm != Algorithm::local) {
    throw UsageError("trace needs --algo local");
  }
  TraceResult trace;
  trace.trajectories.push_back(closed_trajectory(config));
  if (config.rk4_oracle) {
    Rk4Result rk4 = rk4_trajectory(config);
    trace.sup_gap = sup_gap(trace.trajectories.front(), rk4.trajectory);
    trace.trajectories.push_back(std::move(rk4.trajectory));
  }
  return trace;
}

std::string render_trace(const RunConfig& config, const TraceResult& trace,
                         OutputFormat format) {
  if (format == OutputFormat::csv) return trajectories_to_csv(trace.trajectories);
  Json trajectories = Json::array();
  for (const Trajectory& t : trace.trajectories) trajectories.push_back(trajectory_to_json(t));
  Json gap = nullptr;
  if (trace.sup_gap) gap = *trace.sup_gap;
  return dump_report(envelope(
      config.to_json(),
      Json{{"trajectories", std::move(trajectories)}, {"sup_gap", std::move(gap)}},
      diagnostics_for(config)));
}

int run_verify(const VerifyOptions& options, std::ostream& out) {
  const std::vector<SuiteResult> results = run_verification(options);
  std::vector<std::string> failed;
  for (const SuiteResult& r : results) {
    out << fmt::format("{}  {:<20} tol {:<8.1e} worst {:<10.3e} {}\n",
                       r.passed ? "PASS" : "FAIL", r.name, r.tolerance, r.worst,
                       r.detail);
    if (!r.passed) failed.push_back(r.name);
  }
  out << "\nnote: " << kOmegaSignNote << "\nnote: " << kHoldTimeNote << "\n";
  if (!failed.empty()) {
    out << fmt::format("\nverification FAILED: {}\n", fmt::join(failed, ", "));
    return kExitVerification;
  }
  out << fmt::format("\nall {} suites passed\n", results.size());
  return kExitOk;
}

Json mob_demo_report(const RunConfig& config) {
  config.validate();
  if (!config.marked) throw UsageError("mob-demo needs --marked");
  const NonlinearParams p = config.params();
  const OracleSpec oracle(config.n, *config.marked);
  std::vector<double> times{0.1, 1.0, 2.0};
  if (oracle.s() > 0) {
    const double t_star = hold_time(config.n, oracle.s(), p);
    times = {0.1, t_star, 2.0 * t_star};
  }
  Json results{{"mob", to_json(signaling_check_mob())},
               {"local", to_json(no_signaling_check(config.n, oracle, p, times))},
               {"pairwise", to_json(pairwise_signaling_check(oracle))}};
  return envelope(config.to_json(), std::move(results), diagnostics_for(config));
}

}  // namespace nlsearch
