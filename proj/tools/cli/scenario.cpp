// Copyright 2026 The udw Authors
// SPDX-License-Identifier: Apache-2.0
#include "scenario.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "udw/errors.hpp"

namespace udw::cli {

namespace pt = boost::property_tree;

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& field, const std::string& text) {
  const std::string t = trim(text);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || ptr != t.data() + t.size() || t.empty())
    throw ConfigError(field, "expected a number, got '" + text + "'");
  return v;
}

std::size_t parse_count(const std::string& field, const std::string& text) {
  const std::string t = trim(text);
  std::size_t v = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || ptr != t.data() + t.size() || t.empty())
    throw ConfigError(field, "expected a non-negative integer, got '" + text + "'");
  return v;
}

bool parse_bool(const std::string& field, const std::string& text) {
  const std::string t = trim(text);
  if (t == "true" || t == "1" || t == "yes") return true;
  if (t == "false" || t == "0" || t == "no") return false;
  throw ConfigError(field, "expected true or false, got '" + text + "'");
}

std::vector<double> parse_list(const std::string& field, const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (trim(item).empty()) continue;
    out.push_back(parse_double(field, item));
  }
  return out;
}

template <class E>
E parse_enum(const std::string& field, const std::string& text,
             const std::map<std::string, E>& names) {
  const auto it = names.find(trim(text));
  if (it == names.end()) {
    std::string allowed;
    for (const auto& [k, v] : names) allowed += (allowed.empty() ? "" : ", ") + k;
    throw ConfigError(field, "unknown value '" + text + "' (expected one of " + allowed + ")");
  }
  return it->second;
}

const std::map<std::string, RunKind> kRunNames{
    {"profile", RunKind::Profile}, {"respond", RunKind::Respond}, {"scan", RunKind::Scan},
    {"qed", RunKind::Qed}};
const std::map<std::string, ProfileShape> kShapeNames{
    {"delta", ProfileShape::Delta},
    {"gaussian", ProfileShape::Gaussian},
    {"lorentzian", ProfileShape::Lorentzian},
    {"tabulated", ProfileShape::Tabulated}};
const std::map<std::string, OutputFormat> kFormatNames{
    {"csv", OutputFormat::Csv}, {"json", OutputFormat::Json}, {"both", OutputFormat::Both}};

template <class E>
std::string enum_name(E value, const std::map<std::string, E>& names) {
  for (const auto& [k, v] : names)
    if (v == value) return k;
  return "?";
}

// Reads every key once; anything left over is reported as unknown.
class Reader {
 public:
  explicit Reader(const pt::ptree& tree) : tree_(tree) {
    for (const auto& [section, body] : tree_) {
      if (body.empty() && !body.data().empty())
        throw ConfigError(section, "key outside of any section");
      for (const auto& [key, value] : body) unread_.insert(section + "." + key);
    }
  }

  template <class F>
  void get(const std::string& section, const std::string& key, F&& assign) {
    const auto sec = tree_.get_child_optional(section);
    if (!sec) return;
    const auto v = sec->get_optional<std::string>(pt::ptree::path_type(key, '\0'));
    if (!v) return;
    const std::string field = section + "." + key;
    unread_.erase(field);
    assign(field, *v);
  }

  void finish() const {
    if (!unread_.empty()) throw ConfigError(*unread_.begin(), "unknown key");
  }

 private:
  const pt::ptree& tree_;
  std::set<std::string> unread_;
};

}  // namespace

std::string to_string(RunKind kind) { return enum_name(kind, kRunNames); }
std::string to_string(ProfileShape shape) { return enum_name(shape, kShapeNames); }
std::string to_string(OutputFormat format) { return enum_name(format, kFormatNames); }

Scenario parse_scenario(std::istream& in, const std::string& base_dir) {
  pt::ptree tree;
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError("file", e.message() + " at line " + std::to_string(e.line()));
  }
  Scenario s;
  s.base_dir = base_dir;
  Reader r(tree);
  auto dbl = [](double& dst) { return [&dst](const std::string& f, const std::string& v) { dst = parse_double(f, v); }; };
  auto cnt = [](std::size_t& dst) { return [&dst](const std::string& f, const std::string& v) { dst = parse_count(f, v); }; };
  auto str = [](std::string& dst) { return [&dst](const std::string&, const std::string& v) { dst = trim(v); }; };
  auto flag = [](bool& dst) { return [&dst](const std::string& f, const std::string& v) { dst = parse_bool(f, v); }; };
  auto opt = [](std::optional<double>& dst) {
    return [&dst](const std::string& f, const std::string& v) {
      if (trim(v).empty()) dst.reset();
      else dst = parse_double(f, v);
    };
  };

  r.get("run", "kind", [&](const std::string& f, const std::string& v) { s.run = parse_enum(f, v, kRunNames); });
  r.get("run", "threads", cnt(s.threads));

  auto& d = s.detector;
  r.get("detector", "gap", dbl(d.gap));
  r.get("detector", "coupling", dbl(d.coupling));
  r.get("detector", "acceleration", dbl(d.acceleration));
  r.get("detector", "tau_start", dbl(d.tau_start));
  r.get("detector", "tau_end", dbl(d.tau_end));
  r.get("detector", "profile", [&](const std::string& f, const std::string& v) { d.profile = parse_enum(f, v, kShapeNames); });
  r.get("detector", "width", dbl(d.width));
  r.get("detector", "center", dbl(d.center));
  r.get("detector", "modulated", flag(d.modulated));
  r.get("detector", "table", str(d.table));

  r.get("packet", "carrier", dbl(s.packet.carrier));
  r.get("packet", "width", dbl(s.packet.width));
  r.get("packet", "span", dbl(s.packet.span));

  r.get("scan", "carriers", [&](const std::string& f, const std::string& v) { s.scan.carriers = parse_list(f, v); });
  r.get("scan", "packet_width", dbl(s.scan.packet_width));

  auto& n = s.numerics;
  r.get("numerics", "rel_tol", dbl(n.rel_tol));
  r.get("numerics", "k_rel_tol", dbl(n.k_rel_tol));
  r.get("numerics", "max_panels", cnt(n.max_panels));
  r.get("numerics", "k_min", opt(n.k_min));
  r.get("numerics", "k_max", opt(n.k_max));

  auto& p = s.profile_run;
  r.get("profile_run", "k_lo", dbl(p.k_lo));
  r.get("profile_run", "k_hi", dbl(p.k_hi));
  r.get("profile_run", "points", cnt(p.points));
  r.get("profile_run", "numeric", flag(p.numeric));

  auto& q = s.qed;
  r.get("qed", "ground", str(q.ground));
  r.get("qed", "excited", str(q.excited));
  r.get("qed", "coupling", dbl(q.coupling));
  r.get("qed", "ir_fraction", dbl(q.ir_fraction));
  r.get("qed", "p_lo", dbl(q.p_lo));
  r.get("qed", "p_hi", dbl(q.p_hi));
  r.get("qed", "points", cnt(q.points));

  r.get("units", "c", dbl(s.units.c));
  r.get("units", "length", dbl(s.units.length));
  r.get("units", "time", dbl(s.units.time));

  r.get("output", "dir", str(s.output.dir));
  r.get("output", "format", [&](const std::string& f, const std::string& v) { s.output.format = parse_enum(f, v, kFormatNames); });
  r.get("output", "kernel_points", cnt(s.output.kernel_points));

  r.finish();
  validate(s);
  return s;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("file", "cannot open scenario '" + path + "'");
  const auto dir = std::filesystem::path(path).parent_path();
  return parse_scenario(in, dir.empty() ? "." : dir.string());
}

std::string serialize(const Scenario& s, bool include_execution) {
  std::ostringstream o;
  o << "[run]\nkind = " << to_string(s.run) << "\n";
  if (include_execution) o << "threads = " << s.threads << "\n";
  const auto& d = s.detector;
  o << "\n[detector]\n"
    << "gap = " << num(d.gap) << "\ncoupling = " << num(d.coupling)
    << "\nacceleration = " << num(d.acceleration) << "\ntau_start = " << num(d.tau_start)
    << "\ntau_end = " << num(d.tau_end) << "\nprofile = " << to_string(d.profile)
    << "\nwidth = " << num(d.width) << "\ncenter = " << num(d.center)
    << "\nmodulated = " << (d.modulated ? "true" : "false") << "\ntable = " << d.table << "\n";
  o << "\n[packet]\ncarrier = " << num(s.packet.carrier) << "\nwidth = " << num(s.packet.width)
    << "\nspan = " << num(s.packet.span) << "\n";
  o << "\n[scan]\ncarriers = ";
  for (std::size_t i = 0; i < s.scan.carriers.size(); ++i)
    o << (i ? ", " : "") << num(s.scan.carriers[i]);
  o << "\npacket_width = " << num(s.scan.packet_width) << "\n";
  const auto& n = s.numerics;
  o << "\n[numerics]\nrel_tol = " << num(n.rel_tol) << "\nk_rel_tol = " << num(n.k_rel_tol)
    << "\nmax_panels = " << n.max_panels << "\nk_min = " << (n.k_min ? num(*n.k_min) : "")
    << "\nk_max = " << (n.k_max ? num(*n.k_max) : "") << "\n";
  const auto& p = s.profile_run;
  o << "\n[profile_run]\nk_lo = " << num(p.k_lo) << "\nk_hi = " << num(p.k_hi)
    << "\npoints = " << p.points << "\nnumeric = " << (p.numeric ? "true" : "false") << "\n";
  const auto& q = s.qed;
  o << "\n[qed]\nground = " << q.ground << "\nexcited = " << q.excited
    << "\ncoupling = " << num(q.coupling) << "\nir_fraction = " << num(q.ir_fraction)
    << "\np_lo = " << num(q.p_lo) << "\np_hi = " << num(q.p_hi) << "\npoints = " << q.points
    << "\n";
  o << "\n[units]\nc = " << num(s.units.c) << "\nlength = " << num(s.units.length)
    << "\ntime = " << num(s.units.time) << "\n";
  o << "\n[output]\ndir = " << s.output.dir << "\nformat = " << to_string(s.output.format)
    << "\nkernel_points = " << s.output.kernel_points << "\n";
  return o.str();
}

namespace {

void require(bool ok, const std::string& field, const std::string& msg) {
  if (!ok) throw ConfigError(field, msg);
}

bool finite(double v) { return std::isfinite(v); }

}  // namespace

void validate(const Scenario& s) {
  const auto& d = s.detector;
  require(s.threads >= 1, "run.threads", "must be at least 1");
  require(finite(d.gap) && d.gap > 0.0, "detector.gap", "must be positive");
  require(finite(d.coupling), "detector.coupling", "must be finite");
  require(finite(d.acceleration) && d.acceleration >= 0.0, "detector.acceleration",
          "must be non-negative");
  require(finite(d.tau_start), "detector.tau_start", "must be finite");
  require(finite(d.tau_end) && d.tau_end > d.tau_start, "detector.tau_end",
          "must exceed detector.tau_start");
  if (d.profile == ProfileShape::Gaussian || d.profile == ProfileShape::Lorentzian)
    require(finite(d.width) && d.width > 0.0, "detector.width", "must be positive");
  require(finite(d.center), "detector.center", "must be finite");
  require(d.profile != ProfileShape::Tabulated || !d.table.empty(), "detector.table",
          "required for a tabulated profile");
  require(!(d.modulated && d.profile == ProfileShape::Delta), "detector.modulated",
          "a pointlike profile cannot be modulated");

  require(finite(s.packet.carrier) && s.packet.carrier != 0.0, "packet.carrier", "must be nonzero");
  require(finite(s.packet.width) && s.packet.width > 0.0, "packet.width", "must be positive");
  require(finite(s.packet.span) && s.packet.span > 0.0, "packet.span", "must be positive");
  for (double c : s.scan.carriers)
    require(finite(c) && c != 0.0, "scan.carriers", "entries must be nonzero");
  require(finite(s.scan.packet_width) && s.scan.packet_width > 0.0, "scan.packet_width",
          "must be positive");
  if (s.run == RunKind::Scan) require(!s.scan.carriers.empty(), "scan.carriers", "must not be empty");

  const auto& n = s.numerics;
  require(finite(n.rel_tol) && n.rel_tol > 0.0, "numerics.rel_tol", "must be positive");
  require(finite(n.k_rel_tol) && n.k_rel_tol > 0.0, "numerics.k_rel_tol", "must be positive");
  require(n.max_panels >= 4, "numerics.max_panels", "must be at least 4");
  if (n.k_min) require(finite(*n.k_min) && *n.k_min > 0.0, "numerics.k_min", "must be positive");
  if (n.k_max) require(finite(*n.k_max) && *n.k_max > 0.0, "numerics.k_max", "must be positive");
  if (n.k_min && n.k_max) require(*n.k_max > *n.k_min, "numerics.k_max", "must exceed numerics.k_min");

  const auto& p = s.profile_run;
  require(finite(p.k_lo), "profile_run.k_lo", "must be finite");
  require(finite(p.k_hi) && p.k_hi > p.k_lo, "profile_run.k_hi", "must exceed profile_run.k_lo");
  require(p.points >= 2, "profile_run.points", "must be at least 2");
  require(!(p.numeric && d.profile == ProfileShape::Delta), "profile_run.numeric",
          "a pointlike profile has no numeric transform");

  const auto& q = s.qed;
  if (s.run == RunKind::Qed) {
    require(!q.ground.empty(), "qed.ground", "required for a qed run");
    require(!q.excited.empty(), "qed.excited", "required for a qed run");
  }
  require(finite(q.coupling), "qed.coupling", "must be finite");
  require(finite(q.ir_fraction) && q.ir_fraction > 0.0, "qed.ir_fraction", "must be positive");
  require(finite(q.p_lo) && q.p_lo > 0.0, "qed.p_lo", "must be positive");
  require(finite(q.p_hi) && q.p_hi > q.p_lo, "qed.p_hi", "must exceed qed.p_lo");
  require(q.points >= 1, "qed.points", "must be at least 1");

  require(finite(s.units.c) && s.units.c > 0.0, "units.c", "must be positive");
  require(finite(s.units.length) && s.units.length > 0.0, "units.length", "must be positive");
  require(finite(s.units.time) && s.units.time > 0.0, "units.time", "must be positive");
  require(!s.output.dir.empty(), "output.dir", "must not be empty");
}

std::string resolve_path(const Scenario& s, const std::string& name) {
  const std::filesystem::path p(name);
  if (p.is_absolute()) return p.string();
  return (std::filesystem::path(s.base_dir) / p).string();
}

SpatialProfile build_profile(const Scenario& s) {
  const auto& d = s.detector;
  const double len = s.units.length;
  SpatialProfile base = SpatialProfile::delta(d.center * len);
  switch (d.profile) {
    case ProfileShape::Delta:
      break;
    case ProfileShape::Gaussian:
      base = SpatialProfile::gaussian(d.width * len, d.center * len);
      break;
    case ProfileShape::Lorentzian:
      base = SpatialProfile::lorentzian(d.width * len, d.center * len);
      break;
    case ProfileShape::Tabulated: {
      auto t = load_tabulated_profile(resolve_path(s, d.table));
      auto x = t.grid();
      for (auto& v : x) v *= len;
      std::vector<Complex> values = t.table();
      for (auto& v : values) v /= len;  // keeps the spatial integral
      base = SpatialProfile::tabulated(std::move(x), std::move(values),
                                       SpatialProfile::Normalization::AsGiven, d.center * len);
      break;
    }
  }
  if (!d.modulated) return base;
  const double c = s.units.c * s.units.length / s.units.time;
  return modulate(base, d.gap / s.units.time, c);
}

DetectorConfig build_detector(const Scenario& s) {
  const auto& d = s.detector;
  const double c = s.units.c * s.units.length / s.units.time;
  DetectorConfig cfg;
  cfg.gap = d.gap / s.units.time;
  cfg.coupling = d.coupling;
  cfg.tau_start = d.tau_start * s.units.time;
  cfg.tau_end = d.tau_end * s.units.time;
  cfg.profile = build_profile(s);
  try {
    cfg.frame = TrajectoryFrame(d.acceleration * s.units.length / (s.units.time * s.units.time), c,
                                cfg.profile.extent());
  } catch (const HorizonCrossing& e) {
    throw ConfigError("detector.acceleration", e.what());
  }
  if (s.numerics.k_min || s.numerics.k_max) {
    auto dom = default_k_domain(cfg.gap, cfg.profile, c);
    if (s.numerics.k_min) dom.k_min = *s.numerics.k_min / s.units.length;
    if (s.numerics.k_max) dom.k_max = *s.numerics.k_max / s.units.length;
    if (!(dom.k_max > dom.k_min)) throw ConfigError("numerics.k_max", "must exceed numerics.k_min");
    cfg.cutoffs = dom;
  }
  try {
    cfg.validate();
  } catch (const HorizonCrossing& e) {
    throw ConfigError("detector.acceleration", e.what());
  }
  return cfg;
}

ResponseNumerics build_numerics(const Scenario& s) {
  ResponseNumerics n;
  n.tau_spec.rel_tol = s.numerics.rel_tol;
  n.tau_spec.max_panels = s.numerics.max_panels;
  n.k_spec.rel_tol = s.numerics.k_rel_tol;
  return n;
}

}  // namespace udw::cli
