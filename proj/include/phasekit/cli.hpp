// Copyright 2026 The phasekit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

namespace phasekit {

/// Exit codes of the command-line front end.
enum ExitCode : int {
  kExitOk = 0,
  kExitInput = 1,
  kExitIndefinite = 2,
  kExitUnstable = 3,
  kExitDivergence = 4,
};

/// Entry point of the `phasekit` executable; argv[0] is the program name.
int run_cli(int argc, const char* const* argv);

/// Same, with the arguments (excluding the program name) as strings.
int run_cli(const std::vector<std::string>& args);

}  // namespace phasekit
