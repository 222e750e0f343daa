// Copyright 2026 The phasekit Authors
// SPDX-License-Identifier: Apache-2.0

#include "phasekit/cli.hpp"

int main(int argc, char** argv) { return phasekit::run_cli(argc, argv); }
