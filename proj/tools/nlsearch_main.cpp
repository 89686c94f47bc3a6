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

// nlsearch: command-line front end.
//
//   nlsearch run --n 3 --marked 110 --algo both
//   nlsearch trace --n 3 --marked 6 --eta 0.1 --oracle rk4 --out trace.csv
//   nlsearch verify
//   nlsearch mob-demo --out locality.json

#include <CLI11.hpp>
#include <iostream>
#include <optional>
#include <string>

#include <fmt/format.h>

#include "nlsearch/commands.hpp"

namespace {

using namespace nlsearch;

struct CliOptions {
  int n = 3;
  std::optional<std::string> marked;
  std::optional<std::size_t> s;
  std::optional<std::string> algo;
  double eps = kDefaultEpsilon;
  double eta = kDefaultEta;
  std::string alpha = "auto";
  std::optional<double> t_max;
  std::optional<double> dt;
  std::string oracle = "none";
  std::string out;
  std::optional<std::string> format;

  RunConfig to_config(Algorithm default_algorithm) const {
    RunConfig config;
    config.n = n;
    if (marked) config.marked = parse_marked(*marked, n);
    config.analytic_s = s;
    config.algorithm = algo ? parse_algorithm(*algo) : default_algorithm;
    config.epsilon = eps;
    config.eta = eta;
    if (alpha != "auto") {
      try {
        std::size_t used = 0;
        config.alpha = std::stod(alpha, &used);
        if (used != alpha.size()) throw std::invalid_argument(alpha);
      } catch (const std::exception&) {
        throw UsageError(fmt::format("--alpha must be 'auto' or a number, got '{}'", alpha));
      }
    }
    config.t_max = t_max;
    config.dt = dt;
    if (oracle != "none" && oracle != "rk4") {
      throw UsageError(fmt::format("--oracle must be none or rk4, got '{}'", oracle));
    }
    config.rk4_oracle = oracle == "rk4";
    return config;
  }

  OutputFormat output_format(OutputFormat fallback) const {
    if (!format) return fallback;
    if (*format == "json") return OutputFormat::json;
    if (*format == "csv") return OutputFormat::csv;
    throw UsageError(fmt::format("--format must be json or csv, got '{}'", *format));
  }
};

void add_common_options(CLI::App& cmd, CliOptions& o) {
  cmd.add_option("--n", o.n, "Number of input qubits");
  cmd.add_option("--marked", o.marked,
                 "Marked inputs: comma-separated integers or n-bit strings");
  cmd.add_option("--s", o.s, "Marked count for the analytic path (--algo local)");
  cmd.add_option("--algo", o.algo, "pairwise | local | both");
  cmd.add_option("--eps", o.eps, "Nonlinearity magnitude epsilon");
  cmd.add_option("--eta", o.eta, "Flag operator parameter eta in (0, 1)");
  cmd.add_option("--alpha", o.alpha, "Gain alpha, or 'auto'");
  cmd.add_option("--t-max", o.t_max, "Trajectory length (default 2 pi / eps)");
  cmd.add_option("--dt", o.dt, "Sample / RK4 step (default 1e-3 * 2 pi / eps)");
  cmd.add_option("--oracle", o.oracle, "none | rk4");
  cmd.add_option("--out", o.out, "Output file (default stdout)");
  cmd.add_option("--format", o.format, "json | csv");
}

void emit(const std::string& out, const std::string& text) {
  if (out.empty()) {
    std::cout << text;
  } else {
    write_file_atomic(out, text);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simulator for the nonlinear flag search and its local variant"};
  app.require_subcommand(1);

  CliOptions options;
  auto* run = app.add_subcommand("run", "Run a pipeline and write a JSON report");
  add_common_options(*run, options);
  auto* trace = app.add_subcommand("trace", "Write the <sigma3>(t) trajectory");
  add_common_options(*trace, options);
  auto* mob = app.add_subcommand("mob-demo", "Locality reports, mobility map vs local dynamics");
  add_common_options(*mob, options);
  auto* verify = app.add_subcommand("verify", "Run every invariant suite");
  std::string fault;
  verify->add_option("--inject-fault", fault, "Deliberately break a component (sign-flip)")
      ->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*run) {
      const RunConfig config = options.to_config(Algorithm::pairwise);
      if (options.output_format(OutputFormat::json) != OutputFormat::json) {
        throw UsageError("run writes JSON reports; use trace for CSV");
      }
      emit(options.out, dump_report(run_report(config)));
    } else if (*trace) {
      const RunConfig config = options.to_config(Algorithm::local);
      const TraceResult result = run_trace(config);
      emit(options.out,
           render_trace(config, result, options.output_format(OutputFormat::csv)));
      if (result.sup_gap) {
        std::cerr << fmt::format("sup |rk4 - closed-form| = {:.3e}\n", *result.sup_gap);
      }
    } else if (*mob) {
      if (!options.marked && !options.s) options.marked = "110";
      const RunConfig config = options.to_config(Algorithm::local);
      if (options.output_format(OutputFormat::json) != OutputFormat::json) {
        throw UsageError("mob-demo writes JSON reports");
      }
      emit(options.out, dump_report(mob_demo_report(config)));
    } else if (*verify) {
      VerifyOptions verify_options;
      if (fault == "sign-flip") {
        verify_options.propagator = sign_flipped_propagator();
      } else if (!fault.empty()) {
        throw UsageError(fmt::format("unknown fault '{}'", fault));
      }
      return run_verify(verify_options, std::cout);
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitOk;
}
