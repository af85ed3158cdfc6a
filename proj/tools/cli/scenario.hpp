// Copyright 2026 The udw Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "udw/qed_bridge.hpp"
#include "udw/response.hpp"

namespace udw::cli {

enum class RunKind { Profile, Respond, Scan, Qed };
enum class ProfileShape { Delta, Gaussian, Lorentzian, Tabulated };
enum class OutputFormat { Csv, Json, Both };

std::string to_string(RunKind kind);
std::string to_string(ProfileShape shape);
std::string to_string(OutputFormat format);

/// A complete run description, as written in the scenario file. Physical
/// values are in file units; `units` converts them at the boundaries.
struct Scenario {
  RunKind run = RunKind::Respond;
  /// Worker threads. Affects speed only and is not part of provenance.
  std::size_t threads = 1;

  struct Detector {
    double gap = 1.0;
    double coupling = 1.0;
    double acceleration = 0.0;
    double tau_start = 0.0;
    double tau_end = 1.0;
    ProfileShape profile = ProfileShape::Gaussian;
    double width = 1.0;
    double center = 0.0;
    bool modulated = false;
    std::string table;  // tabulated profile file, relative to the scenario
    bool operator==(const Detector&) const = default;
  } detector;

  struct Packet {
    double carrier = 1.0;  // frequency; the packet is centred on carrier / c
    double width = 0.05;   // frequency spread of |y|^2
    double span = 10.0;
    bool operator==(const Packet&) const = default;
  } packet;

  struct Scan {
    std::vector<double> carriers;
    double packet_width = 0.05;
    bool operator==(const Scan&) const = default;
  } scan;

  struct Numerics {
    double rel_tol = 1e-8;     // proper-time double integral
    double k_rel_tol = 1e-10;  // wavenumber integrals
    std::size_t max_panels = 400000;
    std::optional<double> k_min;
    std::optional<double> k_max;
    bool operator==(const Numerics&) const = default;
  } numerics;

  struct ProfileRun {
    double k_lo = -10.0;
    double k_hi = 10.0;
    std::size_t points = 201;
    bool numeric = false;
    bool operator==(const ProfileRun&) const = default;
  } profile_run;

  struct Qed {
    std::string ground;
    std::string excited;
    double coupling = 1.0;
    double ir_fraction = 1e-3;
    double p_lo = 0.1;
    double p_hi = 5.0;
    std::size_t points = 50;
    bool operator==(const Qed&) const = default;
  } qed;

  struct Units {
    double c = 1.0;
    double length = 1.0;  // internal length per file length unit
    double time = 1.0;    // internal time per file time unit
    bool operator==(const Units&) const = default;
  } units;

  struct Output {
    std::string dir = ".";
    OutputFormat format = OutputFormat::Both;
    std::size_t kernel_points = 0;  // respond: n x n kernel dump when > 0
    bool operator==(const Output&) const = default;
  } output;

  /// Directory that relative file names are resolved against. Not serialised.
  std::string base_dir = ".";

  bool operator==(const Scenario& o) const {
    return run == o.run && threads == o.threads && detector == o.detector && packet == o.packet &&
           scan == o.scan && numerics == o.numerics && profile_run == o.profile_run &&
           qed == o.qed && units == o.units && output == o.output;
  }
};

/// Parses the INI text. Throws ConfigError naming `section.key` for unknown
/// keys, malformed values and failed validation.
Scenario parse_scenario(std::istream& in, const std::string& base_dir = ".");
Scenario load_scenario(const std::string& path);

/// Deterministic INI text (17 significant digits). `threads` is written only
/// with `include_execution`, so provenance never depends on it.
std::string serialize(const Scenario& s, bool include_execution = true);

/// Throws ConfigError naming the offending field.
void validate(const Scenario& s);

/// Resolves a file name relative to the scenario directory.
std::string resolve_path(const Scenario& s, const std::string& name);

/// Core objects in internal units.
SpatialProfile build_profile(const Scenario& s);
DetectorConfig build_detector(const Scenario& s);
ResponseNumerics build_numerics(const Scenario& s);

}  // namespace udw::cli
