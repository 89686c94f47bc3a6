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

// Serialization of trajectories and reports. JSON goes through
// nlohmann::ordered_json so key order, and therefore output bytes, are fixed.

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "nlsearch/locality.hpp"
#include "nlsearch/nldyn.hpp"
#include "nlsearch/qstate.hpp"

namespace nlsearch {

using Json = nlohmann::ordered_json;

inline constexpr std::string_view kVersion = "1.0.0";

inline constexpr std::string_view kOmegaSignNote =
    "omega sign: Tr rho (A - eta 1) = -eta s / 2^(n-1), so the trace form "
    "gives omega = -eps tanh(alpha eta s / 2^(n-1)) while the closed-form "
    "expression is usually written with +alpha eta s / 2^(n-1). <sigma3>(t) "
    "depends on omega only through cos(2 omega t) and sin^2(omega t); reports "
    "carry |omega| and the propagator uses the signed trace form.";

inline constexpr std::string_view kHoldTimeNote =
    "hold time: <sigma3>(t) = z0 cos(2 omega t) + 2 eta^2 z0 sin^2(omega t) "
    "is minimal at t* = pi / (2 omega), not at pi / eps; at t = pi / omega the "
    "flag is back at z0.";

/// 17 significant digits; parses back to the identical double.
std::string format_double(double value);

Json to_json(const NonlinearParams& p);
Json to_json(const DensityMatrix& rho);
Json to_json(const LocalityReport& report);

Json trajectory_to_json(const Trajectory& trajectory);
Trajectory trajectory_from_json(const Json& j);

struct CsvRow {
  double t = 0.0;
  double sigma3 = 0.0;
  std::string source;

  friend bool operator==(const CsvRow&, const CsvRow&) = default;
};

/// Header `t,sigma3,source`, LF line endings.
std::string trajectories_to_csv(std::span<const Trajectory> trajectories);
/// Throws std::invalid_argument on a malformed header or row.
std::vector<CsvRow> parse_trajectory_csv(std::string_view text);

/// Two-space indented JSON plus a trailing newline.
std::string dump_report(const Json& report);

/// Writes through a sibling temporary and renames it into place.
void write_file_atomic(const std::filesystem::path& path,
                       std::string_view contents);

}  // namespace nlsearch
