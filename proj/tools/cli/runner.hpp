// Copyright 2026 The udw Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "scenario.hpp"

namespace udw::cli {

enum ExitCode : int {
  kSuccess = 0,
  kFailure = 1,
  kConfigError = 2,
  kNotConverged = 3,
};

struct RunReport {
  std::string summary;             // one line, without wall time
  std::vector<std::string> files;  // written artifacts
};

/// Runs the scenario and writes its artifacts under `output.dir`. Throws
/// ConfigError, QuadratureFailure or other udw::Error.
RunReport run_scenario(const Scenario& scenario);

/// run_scenario with error mapping to exit codes; prints the summary line
/// (with wall time) to `out` and diagnostics to `err`.
int run_and_report(const Scenario& scenario, std::ostream& out, std::ostream& err);

/// Comment block embedding the resolved scenario, one '#' line each.
std::string provenance_header(const Scenario& scenario);

}  // namespace udw::cli
