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

#ifndef DPERM_CLI_HPP_
#define DPERM_CLI_HPP_

#include <string>
#include <vector>

namespace dperm {

// Process exit codes. Every library error family maps to one fixed code so
// scripts can branch on the outcome.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;         // unexpected errors
inline constexpr int kExitConfig = 2;          // flag/config validation
inline constexpr int kExitBudgetTooSmall = 3;  // budget cannot pay for the mechanism
inline constexpr int kExitNoConvergence = 4;   // solver iteration budget exhausted
inline constexpr int kExitData = 5;            // unreadable or invalid input data

// Runs the command-line tool in-process: parses argv (argv[0] is the
// program name), dispatches the subcommand, writes artifacts and logs, and
// returns the exit code. Never throws; all errors become diagnostics on
// stderr plus the mapped code.
int run_cli(int argc, const char* const* argv);

// Convenience for tests: args without the program name.
int run_cli(const std::vector<std::string>& args);

}  // namespace dperm

#endif  // DPERM_CLI_HPP_
