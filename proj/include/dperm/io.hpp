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

#ifndef DPERM_IO_HPP_
#define DPERM_IO_HPP_

#include <cstdint>
#include <map>
#include <string>

#include "dperm/core_types.hpp"
#include "dperm/evaluation.hpp"

namespace dperm {

inline constexpr char kToolVersion[] = "0.1.0";

// Reproducibility stamp embedded in every artifact: the tool version, the
// seed all randomness flowed from, the worker count, and the fully resolved
// configuration as key=value strings. Rerunning with exactly these settings
// reproduces the artifact byte for byte.
struct RunMetadata {
  std::string tool_version = kToolVersion;
  std::uint64_t seed = 0;
  int workers = 1;
  std::map<std::string, std::string> config;
};

// Enum spellings used in JSON artifacts.
std::string mechanism_name(Mechanism mechanism);
Mechanism mechanism_from_name(const std::string& name);
std::string method_name(CIMethod method);
CIMethod method_from_name(const std::string& name);

// JSON artifact writers and readers. Writers emit UTF-8 with two-space
// indentation, shortest round-trip number formatting, and a trailing
// newline; every artifact carries a "metadata" object. Readers accept any
// key order, run the type's own validator, and raise ParseError on
// malformed input; unknown keys are ignored.
std::string fit_to_json(const PrivateFit& fit, const RunMetadata& meta);
PrivateFit fit_from_json(const std::string& text);

std::string intervals_to_json(const IntervalSet& intervals, const RunMetadata& meta);
IntervalSet intervals_from_json(const std::string& text);

std::string report_to_json(const EvalReport& report, const RunMetadata& meta);
EvalReport report_from_json(const std::string& text);

std::string metadata_to_json(const RunMetadata& meta);
// Reads the "metadata" object of any artifact (or a bare metadata object).
RunMetadata metadata_from_json(const std::string& text);

// The evaluation report as an aligned-column text table: one row per
// coordinate plus an overall row.
std::string report_table(const EvalReport& report);

// Whole-file helpers. Unreadable input raises ParseError (a data problem);
// an unwritable output path raises ConfigError (the caller named it).
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace dperm

#endif  // DPERM_IO_HPP_
