// Copyright 2026 The udw Authors
// SPDX-License-Identifier: Apache-2.0

#include "udw/response.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "udw/errors.hpp"
#include "udw/thread_pool.hpp"

namespace udw {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Mode normalisation 1 / sqrt(2 (2 pi) c |k|).
double mode_norm(double k, double c) { return 1.0 / std::sqrt(2.0 * kTwoPi * c * std::abs(k)); }

// theta(k, tau) = k * phase_slope(sign(k), tau) for the centre phase.
double phase_slope(const TrajectoryFrame& frame, int sign, double tau) {
  if (frame.inertial()) return -sign * frame.c() * tau;
  return frame.horizon_distance() * std::expm1(-sign * frame.acceleration() * tau / frame.c());
}

double tau_abs_max(const DetectorConfig& cfg) {
  return std::max(std::abs(cfg.tau_start), std::abs(cfg.tau_end));
}

// Largest |L(k, tau)| / |k| over the window.
double chirp_bound(const DetectorConfig& cfg) {
  return std::exp(cfg.frame.acceleration() * tau_abs_max(cfg) / cfg.frame.c());
}

quad::QuadratureSpec with_rate(quad::QuadratureSpec spec, double rate) {
  if (std::isfinite(rate) && rate > 0.0) {
    spec.phase_hint = quad::constant_phase_rate(rate);
  } else {
    spec.phase_hint = nullptr;
  }
  return spec;
}

void require_converged(const quad::IntegrationResult& r, const char* what) {
  if (r.converged) return;
  std::ostringstream os;
  os.precision(6);
  os << what << " did not converge: estimate " << r.value << ", error " << r.error_estimate
     << " after " << r.panels << " panels; worst panel [" << r.worst_panel.lo << ", "
     << r.worst_panel.hi << "] error " << r.worst_panel.error;
  throw QuadratureFailure(os.str());
}

// Packet support intersected with the sign-matching half of the k-domain.
std::optional<std::pair<double, double>> packet_band(const WavepacketSpectrum& y,
                                                     const KDomain& dom) {
  double lo = y.k_lo();
  double hi = y.k_hi();
  if (lo > 0.0) {
    lo = std::max(lo, dom.k_min);
    hi = std::min(hi, dom.k_max);
  } else {
    lo = std::max(lo, -dom.k_max);
    hi = std::min(hi, -dom.k_min);
  }
  if (!(hi > lo)) return std::nullopt;
  return std::make_pair(lo, hi);
}

// Octave breakpoints on [k_min, k_max] for the 1/|k| measure; 2 k_min is
// always one of them.
std::vector<double> octave_breaks(const KDomain& dom) {
  std::vector<double> b{dom.k_min};
  for (double x = 2.0 * dom.k_min; x < dom.k_max; x *= 2.0) b.push_back(x);
  b.push_back(dom.k_max);
  return b;
}

// ---------------------------------------------------------------------------
// Pointwise kernel pieces

Complex packet_u(const WavepacketSpectrum& y, const SpectralProfile& F, const DetectorConfig& cfg,
                 std::pair<double, double> band, double tau, const quad::QuadratureSpec& base,
                 bool creation) {
  const auto& fr = cfg.frame;
  const int s = band.first > 0.0 ? 1 : -1;
  const double c = fr.c();
  const double rate = std::abs(phase_slope(fr, s, tau)) +
                      std::abs(cfg.profile.center()) * chirp_bound(cfg);
  auto f = [&](double k) -> Complex {
    const double L = chirp_factor(fr, k, tau);
    const double th = centre_phase(fr, k, tau);
    if (creation) return std::conj(y(k)) * mode_norm(k, c) * F(L) * std::polar(1.0, -th);
    return y(k) * mode_norm(k, c) * F(-L) * std::polar(1.0, th);
  };
  const auto r = quad::integrate_1d(f, band.first, band.second, with_rate(base, rate));
  require_converged(r, "packet wavenumber integral");
  return r.value;
}

Complex vacuum_integral(const SpectralProfile& F, const DetectorConfig& cfg, double tp,
                        double tdp, const quad::QuadratureSpec& base, bool symmetric_form) {
  const auto& fr = cfg.frame;
  const double c = fr.c();
  const auto dom = cfg.k_domain();
  const auto breaks = octave_breaks(dom);
  Complex total{};
  for (int s : {1, -1}) {
    const double rate = std::abs(phase_slope(fr, s, tdp) - phase_slope(fr, s, tp)) +
                        2.0 * std::abs(cfg.profile.center()) * chirp_bound(cfg);
    auto f = [&](double m) -> Complex {
      const double k = s * m;
      const double n2 = 1.0 / (2.0 * kTwoPi * c * m);
      const double L2 = chirp_factor(fr, k, tdp);
      const double L1 = chirp_factor(fr, k, tp);
      const Complex e = std::polar(1.0, centre_phase(fr, k, tdp) - centre_phase(fr, k, tp));
      if (symmetric_form) return n2 * F(L1) * F(L2) * e;
      return n2 * F(-L2) * F(L1) * e;
    };
    const auto r = quad::integrate_1d(f, breaks, with_rate(base, rate));
    require_converged(r, "vacuum wavenumber integral");
    total += r.value;
  }
  return total;
}

void check_symmetric_preconditions(const WavepacketSpectrum& y, const SpectralProfile& F,
                                   const DetectorConfig& cfg) {
  if (!y.is_real()) throw PreconditionViolated("packet amplitude has an imaginary part");
  const double K = cfg.k_domain().k_max * chirp_bound(cfg);
  constexpr int n = 64;
  double scale = 0.0;
  double worst = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double k = K * static_cast<double>(i) / n;
    const Complex a = F(k);
    const Complex b = F(-k);
    scale = std::max({scale, std::abs(a), std::abs(b)});
    worst = std::max(worst, std::abs(a - b));
  }
  if (worst > 1e-9 * scale) {
    std::ostringstream os;
    os << "spectral profile is not even: max |F(k) - F(-k)| = " << worst << " vs scale " << scale;
    throw PreconditionViolated(os.str());
  }
}

// ---------------------------------------------------------------------------
// Probability engine

// Fixed wavenumber node set shared by every (tau', tau'') evaluation.
struct ModeSet {
  std::vector<double> k;
  std::vector<double> w;  // quadrature weight times any real measure factor
  std::vector<Complex> gm0, gp0;  // F(-k), F(k) for inertial frames
  double rule_rel_error = 0.0;
  std::size_t rule_evaluations = 0;

  std::size_t size() const noexcept { return k.size(); }
};

struct Engine {
  DetectorConfig cfg;
  KDomain dom;
  SpectralProfile F;
  double c;
};

SpectralProfile engine_spectrum(const DetectorConfig& cfg, const KDomain& dom) {
  auto F = spectral(cfg.profile);
  if (F.provenance() == SpectralProvenance::Numeric) {
    const double K = 1.01 * dom.k_max * chirp_bound(cfg);
    F = resample(F, -K, K, 8193);
  }
  return F;
}

Engine make_engine(const DetectorConfig& cfg) {
  cfg.validate();
  const auto dom = cfg.k_domain();
  return Engine{cfg, dom, engine_spectrum(cfg, dom), cfg.frame.c()};
}

std::vector<double> envelope_taus(const DetectorConfig& cfg) {
  std::vector<double> t{cfg.tau_start, 0.5 * (cfg.tau_start + cfg.tau_end), cfg.tau_end};
  if (cfg.tau_start < 0.0 && cfg.tau_end > 0.0) t.push_back(0.0);
  return t;
}

// Largest |F(+-L(k, tau))| over a few window samples.
double profile_envelope(const Engine& e, double k, const std::vector<double>& taus) {
  double m = 0.0;
  for (double t : taus) {
    const double L = chirp_factor(e.cfg.frame, k, t);
    m = std::max({m, std::abs(e.F(L)), std::abs(e.F(-L))});
  }
  return m;
}

void finish_modes(const Engine& e, ModeSet& ms) {
  if (!e.cfg.frame.inertial()) return;
  ms.gm0.resize(ms.size());
  ms.gp0.resize(ms.size());
  for (std::size_t j = 0; j < ms.size(); ++j) {
    ms.gm0[j] = e.F(-ms.k[j]);
    ms.gp0[j] = e.F(ms.k[j]);
  }
}

double rule_rel(const quad::IntegrationResult& r) {
  const double v = std::abs(r.value);
  return v > 0.0 ? r.error_estimate / v : 0.0;
}

// Nodes over the packet band; w_j = quadrature weight times N(k_j).
ModeSet packet_modes(const Engine& e, const WavepacketSpectrum& y,
                     std::pair<double, double> band, const quad::QuadratureSpec& base) {
  const auto& fr = e.cfg.frame;
  const int s = band.first > 0.0 ? 1 : -1;
  const double rate = std::max(std::abs(phase_slope(fr, s, e.cfg.tau_start)),
                               std::abs(phase_slope(fr, s, e.cfg.tau_end))) +
                      std::abs(e.cfg.profile.center()) * chirp_bound(e.cfg);
  const auto taus = envelope_taus(e.cfg);
  // |y N G| fixes the resolution; the phase hint covers the oscillation
  // at every tau of the window.
  auto env = [&](double k) -> Complex {
    return std::abs(y(k)) * mode_norm(k, e.c) * profile_envelope(e, k, taus);
  };
  const std::array<double, 2> breaks{band.first, band.second};
  quad::IntegrationResult r;
  const auto rule = quad::adaptive_rule_1d(env, breaks, with_rate(base, rate), &r);
  require_converged(r, "packet wavenumber rule");
  ModeSet ms;
  ms.k = rule.nodes;
  ms.w.resize(rule.size());
  for (std::size_t j = 0; j < rule.size(); ++j) ms.w[j] = rule.weights[j] * mode_norm(ms.k[j], e.c);
  ms.rule_rel_error = rule_rel(r);
  ms.rule_evaluations = r.evaluations;
  finish_modes(e, ms);
  return ms;
}

// Nodes over both signs of k; w_j = quadrature weight times N(k_j)^2.
// With `below`, only nodes with |k| < below are kept.
ModeSet vacuum_modes(const Engine& e, const quad::QuadratureSpec& base,
                     double below = std::numeric_limits<double>::infinity()) {
  const auto& fr = e.cfg.frame;
  const auto taus = envelope_taus(e.cfg);
  const auto breaks = octave_breaks(e.dom);
  ModeSet ms;
  for (int s : {1, -1}) {
    const double rate =
        std::abs(phase_slope(fr, s, e.cfg.tau_end) - phase_slope(fr, s, e.cfg.tau_start)) +
        2.0 * std::abs(e.cfg.profile.center()) * chirp_bound(e.cfg);
    auto env = [&](double m) -> Complex {
      const double g = profile_envelope(e, s * m, taus);
      return g * g / (2.0 * kTwoPi * e.c * m);
    };
    quad::IntegrationResult r;
    const auto rule = quad::adaptive_rule_1d(env, breaks, with_rate(base, rate), &r);
    require_converged(r, "vacuum wavenumber rule");
    for (std::size_t j = 0; j < rule.size(); ++j) {
      const double m = rule.nodes[j];
      if (!(m < below)) continue;
      ms.k.push_back(s * m);
      ms.w.push_back(rule.weights[j] / (2.0 * kTwoPi * e.c * m));
    }
    ms.rule_rel_error = std::max(ms.rule_rel_error, rule_rel(r));
    ms.rule_evaluations += r.evaluations;
  }
  finish_modes(e, ms);
  return ms;
}

// A_j(tau) = G^-(k_j, tau) e^{i theta}, B_j(tau) = G^+(k_j, tau) e^{-i theta}.
void mode_factors(const Engine& e, const ModeSet& ms, double tau, Complex* A, Complex* B) {
  const auto& fr = e.cfg.frame;
  const bool inertial = fr.inertial();
  for (std::size_t j = 0; j < ms.size(); ++j) {
    const double k = ms.k[j];
    const Complex ph = std::polar(1.0, centre_phase(fr, k, tau));
    Complex gm, gp;
    if (inertial) {
      gm = ms.gm0[j];
      gp = ms.gp0[j];
    } else {
      const double L = chirp_factor(fr, k, tau);
      gm = e.F(-L);
      gp = e.F(L);
    }
    A[j] = gm * ph;
    B[j] = gp * std::conj(ph);
  }
}

// x = tau', y = tau''; integrand exp(i gap (tau' - tau'')) W(tau', tau'').
quad::TensorIntegrand packet_integrand(const Engine& e, const ModeSet& ms,
                                       std::vector<Complex> alpha, std::vector<Complex> beta) {
  return [&e, &ms, alpha = std::move(alpha), beta = std::move(beta)](
             std::span<const double> xs, std::span<const double> ys, std::span<Complex> out) {
    const std::size_t n = ms.size();
    std::vector<Complex> A(n), B(n);
    auto uv = [&](double tau) {
      mode_factors(e, ms, tau, A.data(), B.data());
      Complex u{}, v{};
      for (std::size_t j = 0; j < n; ++j) {
        u += alpha[j] * A[j];
        v += beta[j] * B[j];
      }
      return std::make_pair(u, v);
    };
    std::vector<std::pair<Complex, Complex>> X(xs.size()), Y(ys.size());
    for (std::size_t i = 0; i < xs.size(); ++i) X[i] = uv(xs[i]);
    for (std::size_t j = 0; j < ys.size(); ++j) Y[j] = uv(ys[j]);
    const double gap = e.cfg.gap;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      for (std::size_t j = 0; j < ys.size(); ++j) {
        const Complex w = Y[j].second * X[i].first + Y[j].first * X[i].second;
        out[i * ys.size() + j] = std::polar(1.0, gap * (xs[i] - ys[j])) * w;
      }
    }
  };
}

quad::TensorIntegrand vacuum_integrand(const Engine& e, const ModeSet& ms) {
  return [&e, &ms](std::span<const double> xs, std::span<const double> ys,
                   std::span<Complex> out) {
    const std::size_t n = ms.size();
    std::vector<Complex> Ay(ys.size() * n), Bx(xs.size() * n), scratch(n);
    for (std::size_t j = 0; j < ys.size(); ++j) {
      mode_factors(e, ms, ys[j], &Ay[j * n], scratch.data());
      for (std::size_t m = 0; m < n; ++m) Ay[j * n + m] *= ms.w[m];
    }
    for (std::size_t i = 0; i < xs.size(); ++i) mode_factors(e, ms, xs[i], scratch.data(), &Bx[i * n]);
    const double gap = e.cfg.gap;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const Complex* b = &Bx[i * n];
      for (std::size_t j = 0; j < ys.size(); ++j) {
        const Complex* a = &Ay[j * n];
        double re = 0.0, im = 0.0;
        for (std::size_t m = 0; m < n; ++m) {
          re += a[m].real() * b[m].real() - a[m].imag() * b[m].imag();
          im += a[m].real() * b[m].imag() + a[m].imag() * b[m].real();
        }
        out[i * ys.size() + j] = std::polar(1.0, gap * (xs[i] - ys[j])) * Complex(re, im);
      }
    }
  };
}

struct PartResult {
  double value = 0.0;
  double error = 0.0;
  std::size_t evaluations = 0;
};

// Oscillation rate of exp(i gap tau) times modes up to |k| = kmax.
double tau_rate(const Engine& e, double kmax) {
  return (e.cfg.gap + e.c * kmax) * chirp_bound(e.cfg);
}

PartResult integrate_tau(const Engine& e, const quad::TensorIntegrand& f, const ModeSet& ms,
                         double rate, const ResponseNumerics& num, const char* what) {
  PartResult out;
  out.evaluations = ms.rule_evaluations;
  if (ms.size() == 0) return out;
  const auto sym = e.cfg.profile.is_real() ? quad::Symmetry::Hermitian : quad::Symmetry::None;
  const auto r = quad::integrate_2d(f, e.cfg.tau_start, e.cfg.tau_end,
                                    with_rate(num.tau_spec, rate), sym, num.pool);
  require_converged(r, what);
  out.value = r.value.real();
  out.error = r.error_estimate + ms.rule_rel_error * std::abs(out.value);
  out.evaluations += r.evaluations;
  return out;
}

// rms |k| of the vacuum mode weights, the typical oscillation scale in tau.
double vacuum_k_scale(const Engine& e, const ModeSet& ms) {
  double num = 0.0, den = 0.0;
  for (std::size_t j = 0; j < ms.size(); ++j) {
    const double g = std::abs(e.F(ms.k[j]));
    const double w = std::abs(ms.w[j]) * g * g;
    num += w * ms.k[j] * ms.k[j];
    den += w;
  }
  return den > 0.0 ? std::sqrt(num / den) : 0.0;
}

struct VacuumParts {
  PartResult full;
  PartResult sliver;  // |k| < 2 k_min
};

VacuumParts vacuum_probability(const Engine& e, const ResponseNumerics& num) {
  VacuumParts out;
  const auto all = vacuum_modes(e, num.k_spec);
  const double rate = tau_rate(e, vacuum_k_scale(e, all));
  out.full = integrate_tau(e, vacuum_integrand(e, all), all, rate, num, "vacuum proper-time integral");
  const auto low = vacuum_modes(e, num.k_spec, 2.0 * e.dom.k_min);
  out.sliver = integrate_tau(e, vacuum_integrand(e, low), low, tau_rate(e, 2.0 * e.dom.k_min), num,
                             "infrared proper-time integral");
  return out;
}

PartResult packet_probability(const Engine& e, const WavepacketSpectrum& y,
                              const ResponseNumerics& num) {
  const auto band = packet_band(y, e.dom);
  if (!band) return {};
  const auto ms = packet_modes(e, y, *band, num.k_spec);
  std::vector<Complex> alpha(ms.size()), beta(ms.size());
  for (std::size_t j = 0; j < ms.size(); ++j) {
    const Complex yj = y(ms.k[j]);
    alpha[j] = ms.w[j] * yj;
    beta[j] = ms.w[j] * std::conj(yj);
  }
  const double kmax = std::max(std::abs(band->first), std::abs(band->second));
  return integrate_tau(e, packet_integrand(e, ms, std::move(alpha), std::move(beta)), ms,
                       tau_rate(e, kmax), num, "packet proper-time integral");
}

ProbabilityResult assemble(const Engine& e, const PartResult& packet, const VacuumParts& vac) {
  const double g2 = e.cfg.coupling * e.cfg.coupling;
  ProbabilityResult r;
  r.cutoffs = e.dom;
  r.breakdown.packet_term = g2 * packet.value;
  r.breakdown.vacuum_term = g2 * vac.full.value;
  r.breakdown.packet_error = g2 * packet.error;
  r.breakdown.vacuum_error = g2 * vac.full.error;
  r.value = r.breakdown.packet_term + r.breakdown.vacuum_term;
  r.quadrature_error = r.breakdown.packet_error + r.breakdown.vacuum_error;
  r.value_at_double_kmin = r.value - g2 * vac.sliver.value;
  r.evaluations = packet.evaluations + vac.full.evaluations + vac.sliver.evaluations;
  if (r.value < -5.0 * r.quadrature_error) {
    std::ostringstream os;
    os << "excitation probability " << r.value << " below -5 x error " << r.quadrature_error;
    throw NegativeBeyondTolerance(os.str());
  }
  return r;
}

}  // namespace

// ---------------------------------------------------------------------------

WavepacketSpectrum::WavepacketSpectrum(Amplitude amplitude, double k_lo, double k_hi,
                                       bool normalize)
    : amplitude_(std::move(amplitude)), k_lo_(k_lo), k_hi_(k_hi) {
  if (!amplitude_) throw InvalidPacket("packet amplitude is empty");
  if (!(std::isfinite(k_lo) && std::isfinite(k_hi) && k_lo < k_hi))
    throw InvalidPacket("packet support must be a finite interval [k_lo, k_hi]");
  if (!(k_lo > 0.0 || k_hi < 0.0)) throw InvalidPacket("packet support must exclude k = 0");
  constexpr int n = 256;
  double amax = 0.0, imax = 0.0;
  for (int i = 0; i <= n; ++i) {
    const Complex v = amplitude_(k_lo + (k_hi - k_lo) * i / n);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw InvalidPacket("packet amplitude is not finite");
    amax = std::max(amax, std::abs(v));
    imax = std::max(imax, std::abs(v.imag()));
  }
  real_ = imax <= 1e-14 * amax;
  quad::QuadratureSpec spec;
  spec.rel_tol = 1e-13;
  spec.max_panels = 100000;
  const auto r = quad::integrate_1d([this](double k) { return Complex(std::norm(amplitude_(k))); },
                                    k_lo, k_hi, spec);
  const double norm = r.value.real();
  if (!(norm > 0.0)) throw InvalidPacket("packet amplitude vanishes on its support");
  if (normalize) {
    scale_ = 1.0 / std::sqrt(norm);
  } else if (std::abs(norm - 1.0) > 1e-8) {
    std::ostringstream os;
    os << "packet norm " << norm << " differs from 1 by more than 1e-8";
    throw InvalidPacket(os.str());
  }
}

WavepacketSpectrum WavepacketSpectrum::gaussian(double center, double width, double span) {
  if (!(std::isfinite(center) && center != 0.0)) throw InvalidPacket("packet centre must be nonzero");
  if (!(width > 0.0 && std::isfinite(width))) throw InvalidPacket("packet width must be positive");
  if (!(span > 0.0)) throw InvalidPacket("packet span must be positive");
  double lo = center - span * width;
  double hi = center + span * width;
  const double floor = 1e-9 * std::abs(center);
  if (center > 0.0) lo = std::max(lo, floor);
  if (center < 0.0) hi = std::min(hi, -floor);
  const double pre = std::pow(kTwoPi * width * width, -0.25);
  auto amp = [=](double k) -> Complex {
    const double d = k - center;
    return pre * std::exp(-d * d / (4.0 * width * width));
  };
  return WavepacketSpectrum(amp, lo, hi, true);
}

Complex WavepacketSpectrum::operator()(double k) const {
  if (k < k_lo_ || k > k_hi_) return 0.0;
  return scale_ * amplitude_(k);
}

KDomain default_k_domain(double gap, const SpatialProfile& profile, double c) {
  const double L = profile.characteristic_length();
  KDomain d;
  d.k_min = 1e-3 * gap / c;
  d.k_max = L > 0.0 ? gap / c + 12.0 / L : 40.0 * gap / c;
  return d;
}

void DetectorConfig::validate() const {
  if (!(gap > 0.0 && std::isfinite(gap))) throw std::invalid_argument("gap must be positive");
  if (!std::isfinite(coupling)) throw std::invalid_argument("coupling must be finite");
  if (!(std::isfinite(tau_start) && std::isfinite(tau_end) && tau_end > tau_start))
    throw std::invalid_argument("switching window needs tau_end > tau_start");
  if (cutoffs && !(cutoffs->k_min > 0.0 && cutoffs->k_max > cutoffs->k_min &&
                   std::isfinite(cutoffs->k_max)))
    throw std::invalid_argument("cutoffs need 0 < k_min < k_max");
  frame.check_extent(profile.extent());
}

KDomain DetectorConfig::k_domain() const {
  return cutoffs ? *cutoffs : default_k_domain(gap, profile, frame.c());
}

quad::QuadratureSpec ResponseNumerics::default_k_spec() {
  quad::QuadratureSpec s;
  s.rel_tol = 1e-10;
  s.abs_tol = 1e-300;
  s.max_panels = 200000;
  return s;
}

quad::QuadratureSpec ResponseNumerics::default_tau_spec() {
  quad::QuadratureSpec s;
  s.rel_tol = 1e-8;
  s.abs_tol = 1e-300;
  s.max_panels = 400000;
  return s;
}

Complex G_pm(const SpectralProfile& spectrum, int sign, double k, double tau,
             const TrajectoryFrame& frame) {
  if (sign != 1 && sign != -1) throw std::invalid_argument("sign must be +1 or -1");
  if (k == 0.0) throw ZeroWavenumber();
  return spectrum(sign * chirp_factor(frame, k, tau));
}

Complex G_pm(const SpatialProfile& profile, int sign, double k, double tau,
             const TrajectoryFrame& frame) {
  return G_pm(spectral(profile), sign, k, tau, frame);
}

KernelTerms correlation_terms(const WavepacketSpectrum& y, const DetectorConfig& config,
                              double tau_prime, double tau_dprime,
                              const ResponseNumerics& numerics) {
  config.validate();
  const auto F = spectral(config.profile);
  KernelTerms out;
  if (const auto band = packet_band(y, config.k_domain())) {
    const auto& spec = numerics.k_spec;
    const Complex u1 = packet_u(y, F, config, *band, tau_prime, spec, false);
    const Complex v1 = packet_u(y, F, config, *band, tau_prime, spec, true);
    const Complex u2 = packet_u(y, F, config, *band, tau_dprime, spec, false);
    const Complex v2 = packet_u(y, F, config, *band, tau_dprime, spec, true);
    out.packet = v2 * u1 + u2 * v1;
  }
  out.vacuum = vacuum_integral(F, config, tau_prime, tau_dprime, numerics.k_spec, false);
  return out;
}

Complex correlation_general(const WavepacketSpectrum& y, const DetectorConfig& config,
                            double tau_prime, double tau_dprime,
                            const ResponseNumerics& numerics) {
  return correlation_terms(y, config, tau_prime, tau_dprime, numerics).total();
}

KernelTerms correlation_symmetric_terms(const WavepacketSpectrum& y, const DetectorConfig& config,
                                        double tau_prime, double tau_dprime,
                                        const ResponseNumerics& numerics) {
  config.validate();
  const auto F = spectral(config.profile);
  check_symmetric_preconditions(y, F, config);
  const auto& fr = config.frame;
  const double c = fr.c();
  KernelTerms out;
  if (const auto band = packet_band(y, config.k_domain())) {
    const int s = band->first > 0.0 ? 1 : -1;
    const double rate = std::max(std::abs(phase_slope(fr, s, tau_prime)),
                                 std::abs(phase_slope(fr, s, tau_dprime))) +
                        std::abs(config.profile.center()) * chirp_bound(config);
    // (k, kappa): k pairs with tau'', kappa with tau'.
    auto f = [&](double k, double kappa) -> Complex {
      const double w = y(k).real() * y(kappa).real() /
                       (kTwoPi * c * std::sqrt(std::abs(k) * std::abs(kappa)));
      const Complex g = F(chirp_factor(fr, k, tau_dprime)) * F(chirp_factor(fr, kappa, tau_prime));
      return w * g * std::cos(centre_phase(fr, kappa, tau_prime) - centre_phase(fr, k, tau_dprime));
    };
    const auto r = quad::integrate_2d(f, band->first, band->second,
                                      with_rate(numerics.k_spec, rate));
    require_converged(r, "packet wavenumber double integral");
    out.packet = r.value;
  }
  out.vacuum = vacuum_integral(F, config, tau_prime, tau_dprime, numerics.k_spec, true);
  return out;
}

Complex correlation_symmetric(const WavepacketSpectrum& y, const DetectorConfig& config,
                              double tau_prime, double tau_dprime,
                              const ResponseNumerics& numerics) {
  return correlation_symmetric_terms(y, config, tau_prime, tau_dprime, numerics).total();
}

CorrelationKernel make_correlation_kernel(const WavepacketSpectrum& y, const DetectorConfig& config,
                                          KernelVariant variant,
                                          const ResponseNumerics& numerics) {
  config.validate();
  CorrelationKernel k;
  k.variant = variant;
  if (variant == KernelVariant::CosSimplified) {
    check_symmetric_preconditions(y, spectral(config.profile), config);
    k.evaluator = [y, config, numerics](double tp, double tdp) {
      return correlation_symmetric(y, config, tp, tdp, numerics);
    };
  } else {
    k.evaluator = [y, config, numerics](double tp, double tdp) {
      return correlation_general(y, config, tp, tdp, numerics);
    };
  }
  return k;
}

ProbabilityResult excitation_probability(const WavepacketSpectrum& y,
                                         const DetectorConfig& config,
                                         const ResponseNumerics& numerics) {
  const Engine e = make_engine(config);
  if (config.coupling == 0.0) {
    ProbabilityResult r;
    r.cutoffs = e.dom;
    return r;
  }
  const auto packet = packet_probability(e, y, numerics);
  const auto vac = vacuum_probability(e, numerics);
  return assemble(e, packet, vac);
}

std::vector<SpectralPoint> spectral_response(const DetectorConfig& config,
                                             std::span<const double> carriers,
                                             double packet_width,
                                             const ResponseNumerics& numerics) {
  if (!(packet_width > 0.0)) throw std::invalid_argument("packet width must be positive");
  for (double w : carriers)
    if (!(w != 0.0 && std::isfinite(w))) throw std::invalid_argument("carriers must be finite and nonzero");
  const Engine e = make_engine(config);
  std::vector<SpectralPoint> out;
  out.reserve(carriers.size());
  if (config.coupling == 0.0) {
    for (double w : carriers) {
      SpectralPoint p;
      p.carrier = w;
      p.result.cutoffs = e.dom;
      out.push_back(p);
    }
    return out;
  }
  const auto vac = vacuum_probability(e, numerics);
  for (double w : carriers) {
    const auto y = WavepacketSpectrum::gaussian(w / e.c, packet_width / e.c);
    out.push_back(SpectralPoint{w, assemble(e, packet_probability(e, y, numerics), vac)});
  }
  return out;
}

}  // namespace udw
