// Copyright 2026 The semiphi Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "semiphi/io.hpp"

namespace semiphi::cli {

/// 0: the property holds or the construction succeeded.  1: the property
/// is refuted (a witness is attached where one exists).  2: the input could
/// not be read or validated, or a certificate failed numerically.
enum ExitCode : int { kHolds = 0, kRefuted = 1, kInputError = 2 };

struct Outcome {
  io::ReportFile report;
  int exit_code = kHolds;
};

/// Largest size accepted by the demos.
inline constexpr Eigen::Index kMaxDemoSize = 6;

/// Runs one demo ("example-2-1", "example-3-4", "example-3-9",
/// "compacts-2-6") at size n.  The exit code is kHolds when every expected
/// conclusion is reproduced.
Outcome run_demo(const std::string& name, Eigen::Index n, std::uint64_t seed,
                 const ToleranceProfile& tol);

/// Executes a command on a parsed problem file.
Outcome run_command(const std::string& command, const io::ProblemFile& problem,
                    const ToleranceProfile& tol, std::uint64_t seed);

/// Full command line (without the program name).  Writes the report to
/// `out` (JSON with --json), diagnostics to `err`, and returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace semiphi::cli
