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

#include "nlsearch/report.hpp"

#include <charconv>
#include <fstream>
#include <system_error>

#include <fmt/format.h>

namespace nlsearch {
namespace {

double parse_double(std::string_view field) {
  double value = 0.0;
  const auto [end, ec] =
      std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || end != field.data() + field.size()) {
    throw std::invalid_argument(fmt::format("not a number: '{}'", field));
  }
  return value;
}

TrajectorySource source_from_string(std::string_view name) {
  if (name == to_string(TrajectorySource::rk4)) return TrajectorySource::rk4;
  if (name == to_string(TrajectorySource::closed_form)) {
    return TrajectorySource::closed_form;
  }
  throw std::invalid_argument(fmt::format("unknown trajectory source '{}'", name));
}

}  // namespace

std::string format_double(double value) { return fmt::format("{:.17g}", value); }

Json to_json(const NonlinearParams& p) {
  return Json{{"epsilon", p.epsilon}, {"alpha", p.alpha}, {"eta", p.eta}};
}

Json to_json(const DensityMatrix& rho) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < rho.dim(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < rho.dim(); ++c) {
      row.push_back(Json::array({rho(r, c).real(), rho(r, c).imag()}));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

Json to_json(const LocalityReport& report) {
  Json qubits = Json::array();
  for (const QubitLocality& q : report.qubits) {
    qubits.push_back(Json{{"index", q.index},
                          {"role", q.is_flag ? "flag" : "input"},
                          {"rho_before", to_json(q.before)},
                          {"rho_after", to_json(q.after)},
                          {"purity_before", q.purity_before},
                          {"purity_after", q.purity_after},
                          {"purity_change", q.purity_after - q.purity_before},
                          {"max_deviation", q.max_deviation}});
  }
  return Json{{"dynamics", report.dynamics},
              {"times", report.times},
              {"qubits", std::move(qubits)},
              {"max_input_deviation", report.max_input_deviation},
              {"threshold", kSignalingThreshold},
              {"verdict", to_string(report.verdict)}};
}

Json trajectory_to_json(const Trajectory& trajectory) {
  Json t = Json::array();
  Json sigma3 = Json::array();
  for (const TrajectorySample& sample : trajectory.samples) {
    t.push_back(sample.t);
    sigma3.push_back(sample.sigma3);
  }
  return Json{{"source", to_string(trajectory.source)},
              {"n", trajectory.n},
              {"s", trajectory.s},
              {"params", to_json(trajectory.params)},
              {"t", std::move(t)},
              {"sigma3", std::move(sigma3)}};
}

Trajectory trajectory_from_json(const Json& j) {
  Trajectory trajectory;
  trajectory.source = source_from_string(j.at("source").get<std::string>());
  trajectory.n = j.at("n").get<int>();
  trajectory.s = j.at("s").get<std::size_t>();
  const Json& params = j.at("params");
  trajectory.params = {params.at("epsilon").get<double>(),
                       params.at("alpha").get<double>(),
                       params.at("eta").get<double>()};
  const Json& t = j.at("t");
  const Json& sigma3 = j.at("sigma3");
  if (t.size() != sigma3.size()) {
    throw std::invalid_argument("trajectory arrays differ in length");
  }
  for (std::size_t i = 0; i < t.size(); ++i) {
    trajectory.samples.push_back({t[i].get<double>(), sigma3[i].get<double>()});
  }
  return trajectory;
}

std::string trajectories_to_csv(std::span<const Trajectory> trajectories) {
  std::string out = "t,sigma3,source\n";
  for (const Trajectory& trajectory : trajectories) {
    const char* source = to_string(trajectory.source);
    for (const TrajectorySample& sample : trajectory.samples) {
      out += fmt::format("{},{},{}\n", format_double(sample.t),
                         format_double(sample.sigma3), source);
    }
  }
  return out;
}

std::vector<CsvRow> parse_trajectory_csv(std::string_view text) {
  std::vector<CsvRow> rows;
  bool header = true;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const std::size_t eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    ++line_no;
    if (header) {
      if (line != "t,sigma3,source") {
        throw std::invalid_argument(fmt::format("bad CSV header '{}'", line));
      }
      header = false;
      continue;
    }
    if (line.empty()) continue;
    const std::size_t c1 = line.find(',');
    const std::size_t c2 =
        c1 == std::string_view::npos ? c1 : line.find(',', c1 + 1);
    if (c2 == std::string_view::npos) {
      throw std::invalid_argument(fmt::format("CSV line {} has too few fields", line_no));
    }
    rows.push_back({parse_double(line.substr(0, c1)),
                    parse_double(line.substr(c1 + 1, c2 - c1 - 1)),
                    std::string(line.substr(c2 + 1))});
  }
  if (header) throw std::invalid_argument("empty CSV");
  return rows;
}

std::string dump_report(const Json& report) { return report.dump(2) + "\n"; }

void write_file_atomic(const std::filesystem::path& path,
                       std::string_view contents) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error(fmt::format("cannot open {}", tmp.string()));
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) throw std::runtime_error(fmt::format("cannot write {}", tmp.string()));
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace nlsearch
