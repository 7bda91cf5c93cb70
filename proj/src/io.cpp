//
// Copyright 2026 The dperm Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include "dperm/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <utility>
#include <vector>

#include <json.hpp>

#include "dperm/errors.hpp"

namespace dperm {
namespace {

using OrderedJson = nlohmann::ordered_json;
using Json = nlohmann::json;

OrderedJson vector_to_json(const Vector& v) {
  OrderedJson arr = OrderedJson::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    arr.push_back(v(i));
  }
  return arr;
}

Vector vector_from_json(const Json& arr, const char* key) {
  if (!arr.is_array() || arr.empty()) {
    throw ParseError(std::string("'") + key + "' must be a non-empty array");
  }
  Vector v(static_cast<Eigen::Index>(arr.size()));
  Eigen::Index i = 0;
  for (const auto& entry : arr) {
    if (!entry.is_number()) {
      throw ParseError(std::string("'") + key + "' holds a non-numeric entry");
    }
    v(i++) = entry.get<double>();
  }
  return v;
}

OrderedJson metadata_to_ordered(const RunMetadata& meta) {
  OrderedJson m;
  m["tool_version"] = meta.tool_version;
  m["seed"] = meta.seed;
  m["workers"] = meta.workers;
  OrderedJson config = OrderedJson::object();
  for (const auto& [key, value] : meta.config) {
    config[key] = value;
  }
  m["config"] = std::move(config);
  return m;
}

std::string dump(const OrderedJson& j) { return j.dump(2) + "\n"; }

// All malformed-artifact conditions surface as ParseError so callers treat
// a corrupt file like any other unreadable data.
Json parse_or_throw(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

const Json& field(const Json& j, const char* key) {
  const auto it = j.find(key);
  if (it == j.end()) {
    throw ParseError(std::string("missing key '") + key + "'");
  }
  return *it;
}

double number_field(const Json& j, const char* key) {
  const Json& f = field(j, key);
  if (!f.is_number()) {
    throw ParseError(std::string("'") + key + "' must be a number");
  }
  return f.get<double>();
}

std::string string_field(const Json& j, const char* key) {
  const Json& f = field(j, key);
  if (!f.is_string()) {
    throw ParseError(std::string("'") + key + "' must be a string");
  }
  return f.get<std::string>();
}

std::string format_cell(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", value);
  return buf;
}

}  // namespace

std::string mechanism_name(Mechanism mechanism) {
  switch (mechanism) {
    case Mechanism::kObjectivePerturb:
      return "objective_perturb";
    case Mechanism::kOutputPerturbDP:
      return "output_perturb_dp";
    case Mechanism::kOutputPerturbZCDP:
      return "output_perturb_zcdp";
  }
  throw InvalidArgument("unknown mechanism value");
}

Mechanism mechanism_from_name(const std::string& name) {
  if (name == "objective_perturb") return Mechanism::kObjectivePerturb;
  if (name == "output_perturb_dp") return Mechanism::kOutputPerturbDP;
  if (name == "output_perturb_zcdp") return Mechanism::kOutputPerturbZCDP;
  throw ParseError("unknown mechanism '" + name + "'");
}

std::string method_name(CIMethod method) {
  switch (method) {
    case CIMethod::kMonteCarloDP:
      return "monte_carlo_dp";
    case CIMethod::kClosedFormZCDP:
      return "closed_form_zcdp";
  }
  throw InvalidArgument("unknown interval method value");
}

CIMethod method_from_name(const std::string& name) {
  if (name == "monte_carlo_dp") return CIMethod::kMonteCarloDP;
  if (name == "closed_form_zcdp") return CIMethod::kClosedFormZCDP;
  throw ParseError("unknown interval method '" + name + "'");
}

std::string fit_to_json(const PrivateFit& fit, const RunMetadata& meta) {
  validate_fit(fit);
  OrderedJson j;
  j["theta_tilde"] = vector_to_json(fit.theta_tilde);
  j["mechanism"] = mechanism_name(fit.mechanism);
  if (fit.gamma.has_value()) {
    j["gamma"] = *fit.gamma;
  }
  if (fit.sigma2.has_value()) {
    j["sigma2"] = *fit.sigma2;
  }
  if (fit.eps_prime.has_value()) {
    j["eps_prime"] = *fit.eps_prime;
  }
  j["n"] = fit.n;
  j["c"] = fit.c;
  j["seed"] = meta.seed;
  j["metadata"] = metadata_to_ordered(meta);
  return dump(j);
}

PrivateFit fit_from_json(const std::string& text) {
  const Json j = parse_or_throw(text);
  PrivateFit fit;
  fit.theta_tilde = vector_from_json(field(j, "theta_tilde"), "theta_tilde");
  fit.mechanism = mechanism_from_name(string_field(j, "mechanism"));
  if (j.contains("gamma")) {
    fit.gamma = number_field(j, "gamma");
  }
  if (j.contains("sigma2")) {
    fit.sigma2 = number_field(j, "sigma2");
  }
  if (j.contains("eps_prime")) {
    fit.eps_prime = number_field(j, "eps_prime");
  }
  const Json& n = field(j, "n");
  if (!n.is_number_integer() && !n.is_number_unsigned()) {
    throw ParseError("'n' must be an integer");
  }
  fit.n = n.get<std::int64_t>();
  fit.c = number_field(j, "c");
  try {
    validate_fit(fit);
  } catch (const InvalidArgument& e) {
    throw ParseError(std::string("fit artifact is invalid: ") + e.what());
  }
  return fit;
}

std::string intervals_to_json(const IntervalSet& intervals, const RunMetadata& meta) {
  OrderedJson j;
  j["lo"] = vector_to_json(intervals.lo);
  j["hi"] = vector_to_json(intervals.hi);
  j["alpha"] = intervals.alpha;
  j["method"] = method_name(intervals.method);
  j["seed"] = meta.seed;
  j["metadata"] = metadata_to_ordered(meta);
  return dump(j);
}

IntervalSet intervals_from_json(const std::string& text) {
  const Json j = parse_or_throw(text);
  Vector lo = vector_from_json(field(j, "lo"), "lo");
  Vector hi = vector_from_json(field(j, "hi"), "hi");
  const double alpha = number_field(j, "alpha");
  const CIMethod method = method_from_name(string_field(j, "method"));
  try {
    return make_interval_set(std::move(lo), std::move(hi), alpha, method);
  } catch (const InvalidArgument& e) {
    throw ParseError(std::string("interval artifact is invalid: ") + e.what());
  }
}

std::string report_to_json(const EvalReport& report, const RunMetadata& meta) {
  OrderedJson j;
  j["coverage"] = report.coverage;
  j["mean_ci_length"] = report.mean_ci_length;
  j["sd_ci_length"] = report.sd_ci_length;
  j["mean_vi_length"] = report.mean_vi_length;
  OrderedJson rows = OrderedJson::array();
  for (const auto& stats : report.per_coordinate) {
    OrderedJson row;
    row["coverage"] = stats.coverage;
    row["mean_ci_length"] = stats.mean_ci_length;
    row["sd_ci_length"] = stats.sd_ci_length;
    row["mean_vi_length"] = stats.mean_vi_length;
    rows.push_back(std::move(row));
  }
  j["per_coordinate"] = std::move(rows);
  j["metadata"] = metadata_to_ordered(meta);
  return dump(j);
}

EvalReport report_from_json(const std::string& text) {
  const Json j = parse_or_throw(text);
  EvalReport report;
  report.coverage = number_field(j, "coverage");
  report.mean_ci_length = number_field(j, "mean_ci_length");
  report.sd_ci_length = number_field(j, "sd_ci_length");
  report.mean_vi_length = number_field(j, "mean_vi_length");
  const Json& rows = field(j, "per_coordinate");
  if (!rows.is_array()) {
    throw ParseError("'per_coordinate' must be an array");
  }
  for (const auto& row : rows) {
    CoordinateStats stats;
    stats.coverage = number_field(row, "coverage");
    stats.mean_ci_length = number_field(row, "mean_ci_length");
    stats.sd_ci_length = number_field(row, "sd_ci_length");
    stats.mean_vi_length = number_field(row, "mean_vi_length");
    report.per_coordinate.push_back(stats);
  }
  return report;
}

std::string metadata_to_json(const RunMetadata& meta) { return dump(metadata_to_ordered(meta)); }

RunMetadata metadata_from_json(const std::string& text) {
  Json j = parse_or_throw(text);
  if (j.contains("metadata")) {
    j = j["metadata"];
  }
  RunMetadata meta;
  meta.tool_version = string_field(j, "tool_version");
  const Json& seed = field(j, "seed");
  if (!seed.is_number_unsigned() && !seed.is_number_integer()) {
    throw ParseError("'seed' must be an integer");
  }
  meta.seed = seed.get<std::uint64_t>();
  const Json& workers = field(j, "workers");
  if (!workers.is_number_integer() && !workers.is_number_unsigned()) {
    throw ParseError("'workers' must be an integer");
  }
  meta.workers = workers.get<int>();
  const Json& config = field(j, "config");
  if (!config.is_object()) {
    throw ParseError("'config' must be an object");
  }
  for (const auto& [key, value] : config.items()) {
    if (!value.is_string()) {
      throw ParseError("config entry '" + key + "' must be a string");
    }
    meta.config[key] = value.get<std::string>();
  }
  return meta;
}

std::string report_table(const EvalReport& report) {
  const std::vector<std::string> header{"coordinate", "coverage", "mean_ci_length",
                                        "sd_ci_length", "mean_vi_length"};
  std::vector<std::vector<std::string>> rows;
  for (std::size_t j = 0; j < report.per_coordinate.size(); ++j) {
    const auto& stats = report.per_coordinate[j];
    rows.push_back({std::to_string(j), format_cell(stats.coverage),
                    format_cell(stats.mean_ci_length), format_cell(stats.sd_ci_length),
                    format_cell(stats.mean_vi_length)});
  }
  rows.push_back({"overall", format_cell(report.coverage), format_cell(report.mean_ci_length),
                  format_cell(report.sd_ci_length), format_cell(report.mean_vi_length)});

  std::vector<std::size_t> widths(header.size());
  for (std::size_t col = 0; col < header.size(); ++col) {
    widths[col] = header[col].size();
    for (const auto& row : rows) {
      widths[col] = std::max(widths[col], row[col].size());
    }
  }
  std::ostringstream out;
  const auto emit = [&](const std::vector<std::string>& row) {
    for (std::size_t col = 0; col < row.size(); ++col) {
      if (col > 0) {
        out << "  ";
      }
      out << std::string(widths[col] - row[col].size(), ' ') << row[col];
    }
    out << "\n";
  };
  emit(header);
  for (const auto& row : rows) {
    emit(row);
  }
  return out.str();
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ParseError("cannot open '" + path + "' for reading");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) {
    throw ParseError("failed while reading '" + path + "'");
  }
  return buffer.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw ConfigError("cannot open '" + path + "' for writing");
  }
  out << text;
  out.flush();
  if (!out) {
    throw ConfigError("failed while writing '" + path + "'");
  }
}

}  // namespace dperm
