// Copyright 2026 The udw Authors
// SPDX-License-Identifier: Apache-2.0
#include "runner.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>

#include "json.hpp"

#include "udw/errors.hpp"
#include "udw/thread_pool.hpp"

namespace udw::cli {

namespace {

using json = nlohmann::ordered_json;

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string brief(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

json scenario_json(const Scenario& s) {
  json out = json::object();
  std::istringstream in(serialize(s, false));
  std::string line, section;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line.front() == '[') {
      section = line.substr(1, line.size() - 2);
      out[section] = json::object();
      continue;
    }
    const auto eq = line.find(" = ");
    const std::string key = eq == std::string::npos ? line : line.substr(0, eq);
    const std::string value = eq == std::string::npos ? "" : line.substr(eq + 3);
    out[section][key] = value;
  }
  return out;
}

class Outputs {
 public:
  explicit Outputs(const Scenario& s) : s_(s), dir_(s.output.dir) {
    std::filesystem::create_directories(dir_);
  }

  bool csv() const { return s_.output.format != OutputFormat::Json; }
  bool json_out() const { return s_.output.format != OutputFormat::Csv; }

  std::ofstream open(const std::string& name) {
    const auto path = (dir_ / name).string();
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error("cannot write '" + path + "'");
    files_.push_back(path);
    return f;
  }

  void write_csv(const std::string& name, const std::string& header,
                 const std::vector<std::vector<double>>& rows) {
    if (!csv()) return;
    auto f = open(name);
    f << provenance_header(s_) << header << "\n";
    for (const auto& row : rows) {
      for (std::size_t i = 0; i < row.size(); ++i) f << (i ? "," : "") << num(row[i]);
      f << "\n";
    }
  }

  void write_json(const std::string& name, json result) {
    if (!json_out()) return;
    json env;
    env["tool"] = "udw";
    env["run"] = to_string(s_.run);
    env["scenario"] = scenario_json(s_);
    for (auto& [k, v] : result.items()) env[k] = v;
    auto f = open(name);
    f << env.dump(2) << "\n";
  }

  std::vector<std::string> files() const { return files_; }

 private:
  const Scenario& s_;
  std::filesystem::path dir_;
  std::vector<std::string> files_;
};

std::unique_ptr<ThreadPool> make_pool(const Scenario& s) {
  if (s.threads <= 1) return nullptr;
  return std::make_unique<ThreadPool>(s.threads - 1);
}

json cutoffs_json(const KDomain& d, double length) {
  return json{{"k_min", d.k_min * length}, {"k_max", d.k_max * length}};
}

json result_json(const ProbabilityResult& r, double length) {
  json j;
  j["P"] = r.value;
  j["error"] = r.quadrature_error;
  j["evaluations"] = r.evaluations;
  j["P_at_double_k_min"] = r.value_at_double_kmin;
  j["breakdown"] = json{{"packet_term", r.breakdown.packet_term},
                        {"packet_error", r.breakdown.packet_error},
                        {"vacuum_term", r.breakdown.vacuum_term},
                        {"vacuum_error", r.breakdown.vacuum_error}};
  j["cutoffs"] = cutoffs_json(r.cutoffs, length);
  return j;
}

RunReport run_profile(const Scenario& s) {
  Outputs out(s);
  const auto profile = build_profile(s);
  const auto F = s.profile_run.numeric ? numeric_spectral(profile) : spectral(profile);
  const auto& p = s.profile_run;
  std::vector<std::vector<double>> rows;
  double peak = 0.0;
  for (std::size_t i = 0; i < p.points; ++i) {
    const double k = p.k_lo + (p.k_hi - p.k_lo) * static_cast<double>(i) /
                                  static_cast<double>(p.points - 1);
    const Complex v = F(k / s.units.length);
    peak = std::max(peak, std::abs(v));
    rows.push_back({k, v.real(), v.imag()});
  }
  out.write_csv("profile.csv", "k,re_F,im_F", rows);
  json j;
  j["provenance"] = F.provenance() == SpectralProvenance::Analytic ? "analytic" : "numeric";
  j["points"] = p.points;
  j["max_abs_F"] = peak;
  out.write_json("profile.json", j);
  return {"profile: " + std::to_string(p.points) + " points, " + j["provenance"].get<std::string>() +
              " transform, max|F| = " + brief(peak),
          out.files()};
}

RunReport run_respond(const Scenario& s) {
  Outputs out(s);
  const auto cfg = build_detector(s);
  auto num_spec = build_numerics(s);
  const auto pool = make_pool(s);
  num_spec.pool = pool.get();
  const double c = cfg.frame.c();
  const auto y = WavepacketSpectrum::gaussian(s.packet.carrier / s.units.time / c,
                                              s.packet.width / s.units.time / c, s.packet.span);
  const auto r = excitation_probability(y, cfg, num_spec);
  out.write_csv("respond.csv", "P,err,packet_term,vacuum_term,P_at_double_k_min,evaluations",
                {{r.value, r.quadrature_error, r.breakdown.packet_term, r.breakdown.vacuum_term,
                  r.value_at_double_kmin, static_cast<double>(r.evaluations)}});
  out.write_json("respond.json", result_json(r, s.units.length));

  const std::size_t n = s.output.kernel_points;
  if (n > 0 && out.csv()) {
    std::vector<double> taus(n);
    for (std::size_t i = 0; i < n; ++i)
      taus[i] = n == 1 ? cfg.tau_start
                       : cfg.tau_start + (cfg.tau_end - cfg.tau_start) * static_cast<double>(i) /
                                             static_cast<double>(n - 1);
    std::vector<Complex> W(n * n);
    ResponseNumerics inner = num_spec;
    inner.pool = nullptr;
    for_each_index(pool.get(), n * n, [&](std::size_t idx) {
      W[idx] = correlation_general(y, cfg, taus[idx / n], taus[idx % n], inner);
    });
    std::vector<std::vector<double>> rows;
    for (std::size_t idx = 0; idx < n * n; ++idx)
      rows.push_back({taus[idx / n] / s.units.time, taus[idx % n] / s.units.time, W[idx].real(),
                      W[idx].imag()});
    out.write_csv("kernel.csv", "tau_prime,tau_dprime,re_W,im_W", rows);
  }
  return {"respond: P = " + brief(r.value) + " +- " + brief(r.quadrature_error) + ", evaluations " +
              std::to_string(r.evaluations),
          out.files()};
}

RunReport run_scan(const Scenario& s) {
  Outputs out(s);
  const auto cfg = build_detector(s);
  auto num_spec = build_numerics(s);
  const auto pool = make_pool(s);
  num_spec.pool = pool.get();
  std::vector<double> carriers;
  for (double w : s.scan.carriers) carriers.push_back(w / s.units.time);
  const auto pts = spectral_response(cfg, carriers, s.scan.packet_width / s.units.time, num_spec);
  std::vector<std::vector<double>> rows;
  json arr = json::array();
  std::size_t evals = 0;
  double best = 0.0, best_w = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const auto& r = pts[i].result;
    rows.push_back({s.scan.carriers[i], r.value, r.quadrature_error});
    json j = result_json(r, s.units.length);
    j["carrier"] = s.scan.carriers[i];
    arr.push_back(j);
    evals += r.evaluations;
    if (r.value > best) {
      best = r.value;
      best_w = s.scan.carriers[i];
    }
  }
  out.write_csv("scan.csv", "carrier,P,err", rows);
  out.write_json("scan.json", json{{"points", arr}});
  return {"scan: " + std::to_string(pts.size()) + " carriers, max P = " + brief(best) +
              " at carrier " + brief(best_w) + ", evaluations " + std::to_string(evals),
          out.files()};
}

RunReport run_qed(const Scenario& s) {
  Outputs out(s);
  const auto g = load_wavefunction(resolve_path(s, s.qed.ground), WavefunctionLabel::Ground);
  const auto e = load_wavefunction(resolve_path(s, s.qed.excited), WavefunctionLabel::Excited);
  std::vector<double> p;
  for (std::size_t i = 0; i < s.qed.points; ++i)
    p.push_back(s.qed.points == 1 ? s.qed.p_lo
                                  : s.qed.p_lo + (s.qed.p_hi - s.qed.p_lo) * static_cast<double>(i) /
                                                     static_cast<double>(s.qed.points - 1));
  DecompositionOptions opt;
  opt.coupling = s.qed.coupling;
  opt.ir_fraction = s.qed.ir_fraction;
  HamiltonianDecomposition d;
  try {
    d = decompose(g, e, PolarizationSetup::unit(), p, opt);
  } catch (const IRCutoffRequired& ex) {
    throw ConfigError("qed.p_lo", ex.what());
  }
  if (out.csv()) {
    auto f = out.open("qed.csv");
    f << provenance_header(s);
    write_decomposition_csv(d, f);
  }
  json j;
  j["constants"] = json{{"alpha_gamma", d.alpha_gamma}, {"alpha_delta", d.alpha_delta},
                        {"alpha_beta", d.alpha_beta}, {"gap_shift", d.gap_shift}};
  j["constants_at_double_p_min"] = json{{"alpha_gamma", d.alpha_gamma_2pmin},
                                        {"alpha_delta", d.alpha_delta_2pmin},
                                        {"alpha_beta", d.alpha_beta_2pmin}};
  j["cutoffs"] = json{{"p_min", d.p_min}, {"p_max", d.p_max}};
  j["points"] = p.size();
  out.write_json("qed.json", j);
  return {"qed: alpha_gamma = " + brief(d.alpha_gamma) + ", alpha_delta = " + brief(d.alpha_delta) +
              ", alpha_beta = " + brief(d.alpha_beta),
          out.files()};
}

}  // namespace

std::string provenance_header(const Scenario& scenario) {
  std::ostringstream o;
  o << "# udw scenario\n";
  std::istringstream in(serialize(scenario, false));
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty()) o << "# " << line << "\n";
  }
  return o.str();
}

RunReport run_scenario(const Scenario& scenario) {
  validate(scenario);
  switch (scenario.run) {
    case RunKind::Profile: return run_profile(scenario);
    case RunKind::Respond: return run_respond(scenario);
    case RunKind::Scan: return run_scan(scenario);
    case RunKind::Qed: return run_qed(scenario);
  }
  throw Error("unknown run kind");
}

int run_and_report(const Scenario& scenario, std::ostream& out, std::ostream& err) {
  const auto t0 = std::chrono::steady_clock::now();
  try {
    const auto report = run_scenario(scenario);
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", wall);
    out << report.summary << ", wall " << buf << " s\n";
    return kSuccess;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const QuadratureFailure& e) {
    err << "not converged: " << e.what() << "\n";
    return kNotConverged;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  }
}

}  // namespace udw::cli
