// Copyright 2026 The udw Authors
// SPDX-License-Identifier: Apache-2.0
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "runner.hpp"
#include "scenario.hpp"
#include "udw/errors.hpp"

int main(int argc, char** argv) {
  using namespace udw::cli;

  CLI::App app{"Smeared Unruh-DeWitt detector response"};
  app.require_subcommand(1);

  std::string file;
  std::optional<std::string> out_dir;
  std::optional<std::size_t> threads;
  std::optional<double> rel_tol, k_min, k_max;

  struct Sub {
    const char* name;
    RunKind kind;
    const char* help;
  };
  const Sub subs[] = {{"profile", RunKind::Profile, "tabulate the spectral profile"},
                      {"respond", RunKind::Respond, "excitation probability for one packet"},
                      {"scan", RunKind::Scan, "excitation probability over packet carriers"},
                      {"qed", RunKind::Qed, "Pauli decomposition from wavefunctions"}};
  std::optional<RunKind> chosen;
  for (const auto& sub : subs) {
    auto* cmd = app.add_subcommand(sub.name, sub.help);
    cmd->add_option("scenario", file, "scenario file")->required();
    cmd->add_option("--out", out_dir, "output directory");
    cmd->add_option("--threads", threads, "worker threads (speed only)");
    cmd->add_option("--rel-tol", rel_tol, "relative tolerance of the proper-time integral");
    cmd->add_option("--kmin", k_min, "infrared wavenumber cutoff");
    cmd->add_option("--kmax", k_max, "ultraviolet wavenumber cutoff");
    cmd->callback([&chosen, kind = sub.kind] { chosen = kind; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kSuccess : kConfigError;
  }

  try {
    Scenario s = load_scenario(file);
    if (chosen) s.run = *chosen;
    if (out_dir) s.output.dir = *out_dir;
    if (threads) s.threads = *threads;
    if (rel_tol) s.numerics.rel_tol = *rel_tol;
    if (k_min) s.numerics.k_min = *k_min;
    if (k_max) s.numerics.k_max = *k_max;
    validate(s);
    return run_and_report(s, std::cout, std::cerr);
  } catch (const udw::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  }
}
