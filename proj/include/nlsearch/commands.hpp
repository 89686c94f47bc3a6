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

// Implementation of the `nlsearch` subcommands. Everything here is
// deterministic: the same RunConfig always produces the same bytes.

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "nlsearch/nldyn.hpp"
#include "nlsearch/report.hpp"
#include "nlsearch/verify.hpp"

namespace nlsearch {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitVerification = 2,
  kExitNumerical = 3,
};

/// Bad command-line configuration; maps to kExitUsage.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Algorithm { pairwise, local, both };
enum class OutputFormat { json, csv };

Algorithm parse_algorithm(std::string_view name);
const char* to_string(Algorithm algorithm);

/// Comma-separated list. A token of exactly n binary digits (or with a 0b
/// prefix) is read as a bit string i_1..i_n; anything else as a decimal
/// integer. "" and "none" give the empty set.
std::vector<std::uint64_t> parse_marked(std::string_view text, int n);

struct RunConfig {
  int n = 3;
  std::optional<std::vector<std::uint64_t>> marked;
  std::optional<std::size_t> analytic_s;
  Algorithm algorithm = Algorithm::pairwise;
  double epsilon = kDefaultEpsilon;
  double eta = kDefaultEta;
  /// Unset means auto: default_alpha(n, eta).
  std::optional<double> alpha;
  std::optional<double> t_max;
  std::optional<double> dt;
  bool rk4_oracle = false;

  /// Throws UsageError.
  void validate() const;
  NonlinearParams params() const;
  double resolved_t_max() const;
  double resolved_dt() const;
  std::size_t s() const;
  Json to_json() const;
};

Json run_report(const RunConfig& config);

struct TraceResult {
  std::vector<Trajectory> trajectories;
  /// sup |rk4 - closed form| when the RK4 oracle ran.
  std::optional<double> sup_gap;
};

TraceResult run_trace(const RunConfig& config);
std::string render_trace(const RunConfig& config, const TraceResult& trace,
                         OutputFormat format);

/// Prints one line per suite plus the fixed diagnostic notes.
/// Returns kExitOk or kExitVerification.
int run_verify(const VerifyOptions& options, std::ostream& out);

/// Mobility-map report next to the flag-local report for the same register.
Json mob_demo_report(const RunConfig& config);

}  // namespace nlsearch
