// Copyright 2026 The udw Authors
// SPDX-License-Identifier: Apache-2.0
#include "udw/profiles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <span>
#include <sstream>
#include <stdexcept>

#include <boost/math/interpolators/cardinal_cubic_b_spline.hpp>
#include <boost/math/interpolators/makima.hpp>
#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/ooura_fourier_integrals.hpp>

#include "udw/errors.hpp"
#include "udw/table_io.hpp"

namespace udw {
namespace {

using std::numbers::pi;

constexpr double kGaussianCore = 12.0;     // e^{-72}: below double resolution of F^
constexpr double kLorentzianCore = 20.0;   // algebraic tails handled separately
constexpr double kDecayRatio = 1e-12;

using Makima = boost::math::interpolators::makima<std::vector<double>>;

struct Interpolant {
  Makima re;
  Makima im;
  double lo;
  double hi;

  Complex operator()(double u) const {
    if (u < lo || u > hi) return {};
    return {re(u), im(u)};
  }
};

std::shared_ptr<const Interpolant> make_interpolant(const std::vector<double>& x,
                                                    const std::vector<Complex>& v) {
  std::vector<double> xr(x), xi(x), yr(v.size()), yi(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    yr[i] = v[i].real();
    yi[i] = v[i].imag();
  }
  const double lo = x.front(), hi = x.back();
  return std::make_shared<const Interpolant>(
      Interpolant{Makima(std::move(xr), std::move(yr)), Makima(std::move(xi), std::move(yi)), lo, hi});
}

}  // namespace

struct SpatialProfile::Data {
  ProfileKind kind = ProfileKind::Delta;
  double center = 0.0;
  double width = 0.0;
  double carrier = 0.0;
  std::shared_ptr<const SpatialProfile> envelope;
  std::vector<double> x;
  std::vector<Complex> values;
  std::shared_ptr<const Interpolant> interp;
  bool real = true;

  // Value of the shape at offset u = x - center.
  Complex shape(double u) const {
    switch (kind) {
      case ProfileKind::Delta:
        throw DeltaNotEvaluable();
      case ProfileKind::Gaussian:
        return std::exp(-u * u / (2.0 * width * width)) / (width * std::sqrt(2.0 * pi));
      case ProfileKind::Lorentzian:
        return width / (pi * (u * u + width * width));
      case ProfileKind::Modulated:
        return envelope->data_->shape(u) * std::cos(carrier * u);
      case ProfileKind::Tabulated:
        return (*interp)(u);
    }
    return {};
  }
};

std::string to_string(ProfileKind kind) {
  switch (kind) {
    case ProfileKind::Delta:
      return "delta";
    case ProfileKind::Gaussian:
      return "gaussian";
    case ProfileKind::Lorentzian:
      return "lorentzian";
    case ProfileKind::Modulated:
      return "modulated";
    case ProfileKind::Tabulated:
      return "tabulated";
  }
  return "unknown";
}

SpatialProfile::SpatialProfile(std::shared_ptr<const Data> data) : data_(std::move(data)) {}

SpatialProfile SpatialProfile::delta(double center) {
  auto d = std::make_shared<Data>();
  d->kind = ProfileKind::Delta;
  d->center = center;
  return SpatialProfile(std::move(d));
}

namespace {
void require_width(double width) {
  if (!(width > 0.0) || !std::isfinite(width)) {
    throw InvalidProfile("profile width must be finite and > 0");
  }
}
}  // namespace

SpatialProfile SpatialProfile::gaussian(double width, double center) {
  require_width(width);
  auto d = std::make_shared<Data>();
  d->kind = ProfileKind::Gaussian;
  d->width = width;
  d->center = center;
  return SpatialProfile(std::move(d));
}

SpatialProfile SpatialProfile::lorentzian(double width, double center) {
  require_width(width);
  auto d = std::make_shared<Data>();
  d->kind = ProfileKind::Lorentzian;
  d->width = width;
  d->center = center;
  return SpatialProfile(std::move(d));
}

SpatialProfile SpatialProfile::tabulated(std::vector<double> x, std::vector<Complex> values,
                                         Normalization normalization, double center) {
  if (x.size() != values.size()) throw InvalidProfile("grid and values differ in length");
  if (x.size() < 4) throw InvalidProfile("a tabulated profile needs at least 4 points");
  double peak = 0.0;
  bool real = true, nonneg = true;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!std::isfinite(x[i]) || !std::isfinite(values[i].real()) ||
        !std::isfinite(values[i].imag())) {
      throw InvalidProfile("tabulated profile contains non-finite entries");
    }
    if (i > 0 && !(x[i] > x[i - 1])) throw InvalidProfile("grid must be strictly increasing");
    peak = std::max(peak, std::abs(values[i]));
    real = real && values[i].imag() == 0.0;
    nonneg = nonneg && values[i].real() >= 0.0;
  }
  if (peak == 0.0) throw InvalidProfile("tabulated profile is identically zero");
  if (std::abs(values.front()) > kDecayRatio * peak ||
      std::abs(values.back()) > kDecayRatio * peak) {
    throw InvalidProfile("tabulated grid does not cover the support (|F| at the ends exceeds 1e-12 max|F|)");
  }

  auto d = std::make_shared<Data>();
  d->kind = ProfileKind::Tabulated;
  d->center = center;
  d->real = real;
  d->interp = make_interpolant(x, values);
  if (normalization == Normalization::Auto && real && nonneg) {
    auto shape = d->interp;
    quad::QuadratureSpec spec;
    spec.rel_tol = 1e-13;
    auto r = quad::integrate_1d([&](double u) { return (*shape)(u); }, x, spec);
    const double norm = r.value.real();
    for (auto& v : values) v /= norm;
    d->interp = make_interpolant(x, values);
  }
  d->x = std::move(x);
  d->values = std::move(values);
  return SpatialProfile(std::move(d));
}

ProfileKind SpatialProfile::kind() const noexcept { return data_->kind; }
double SpatialProfile::center() const noexcept { return data_->center; }

double SpatialProfile::width() const {
  switch (data_->kind) {
    case ProfileKind::Gaussian:
    case ProfileKind::Lorentzian:
      return data_->width;
    case ProfileKind::Modulated:
      return data_->envelope->width();
    default:
      throw InvalidProfile(to_string(data_->kind) + " profile has no width parameter");
  }
}

double SpatialProfile::carrier() const {
  if (data_->kind != ProfileKind::Modulated) throw InvalidProfile("profile is not modulated");
  return data_->carrier;
}

const SpatialProfile& SpatialProfile::envelope() const {
  if (data_->kind != ProfileKind::Modulated) throw InvalidProfile("profile is not modulated");
  return *data_->envelope;
}

const std::vector<double>& SpatialProfile::grid() const {
  if (data_->kind != ProfileKind::Tabulated) throw InvalidProfile("profile is not tabulated");
  return data_->x;
}

const std::vector<Complex>& SpatialProfile::table() const {
  if (data_->kind != ProfileKind::Tabulated) throw InvalidProfile("profile is not tabulated");
  return data_->values;
}

bool SpatialProfile::is_real() const noexcept {
  if (data_->kind == ProfileKind::Modulated) return data_->envelope->is_real();
  return data_->real;
}

bool SpatialProfile::is_even() const {
  if (data_->center != 0.0) return false;
  switch (data_->kind) {
    case ProfileKind::Delta:
    case ProfileKind::Gaussian:
    case ProfileKind::Lorentzian:
      return true;
    case ProfileKind::Modulated:
      return data_->envelope->is_even();
    case ProfileKind::Tabulated: {
      const auto& x = data_->x;
      const auto& v = data_->values;
      const std::size_t n = x.size();
      double scale = std::max(std::abs(x.front()), std::abs(x.back()));
      double peak = 0.0;
      for (const auto& z : v) peak = std::max(peak, std::abs(z));
      for (std::size_t i = 0; i < n; ++i) {
        if (std::abs(x[i] + x[n - 1 - i]) > 1e-12 * scale) return false;
        if (std::abs(v[i] - v[n - 1 - i]) > 1e-12 * peak) return false;
      }
      return true;
    }
  }
  return false;
}

double SpatialProfile::characteristic_length() const {
  switch (data_->kind) {
    case ProfileKind::Delta:
      return 0.0;
    case ProfileKind::Gaussian:
    case ProfileKind::Lorentzian:
      return data_->width;
    case ProfileKind::Modulated:
      return data_->envelope->characteristic_length();
    case ProfileKind::Tabulated: {
      // rms half-width of |F| by the trapezoid rule on the table
      const auto& x = data_->x;
      const auto& v = data_->values;
      double m0 = 0.0, m1 = 0.0, m2 = 0.0;
      for (std::size_t i = 0; i + 1 < x.size(); ++i) {
        const double h = 0.5 * (x[i + 1] - x[i]);
        const double a = std::abs(v[i]), b = std::abs(v[i + 1]);
        m0 += h * (a + b);
        m1 += h * (a * x[i] + b * x[i + 1]);
        m2 += h * (a * x[i] * x[i] + b * x[i + 1] * x[i + 1]);
      }
      const double mean = m1 / m0;
      return std::sqrt(std::max(m2 / m0 - mean * mean, 0.0));
    }
  }
  return 0.0;
}

double SpatialProfile::extent() const {
  const double c = std::abs(data_->center);
  switch (data_->kind) {
    case ProfileKind::Delta:
      return c;
    case ProfileKind::Gaussian:
      return c + data_->width * std::sqrt(2.0 * std::log(1.0 / kDecayRatio));
    case ProfileKind::Lorentzian:
      return c + data_->width * std::sqrt(1.0 / kDecayRatio - 1.0);
    case ProfileKind::Modulated:
      return data_->envelope->extent();
    case ProfileKind::Tabulated:
      return c + std::max(std::abs(data_->x.front()), std::abs(data_->x.back()));
  }
  return c;
}

std::pair<double, double> SpatialProfile::core_support() const {
  const double c = data_->center;
  switch (data_->kind) {
    case ProfileKind::Delta:
      return {c, c};
    case ProfileKind::Gaussian:
      return {c - kGaussianCore * data_->width, c + kGaussianCore * data_->width};
    case ProfileKind::Lorentzian:
      return {c - kLorentzianCore * data_->width, c + kLorentzianCore * data_->width};
    case ProfileKind::Modulated:
      return data_->envelope->core_support();
    case ProfileKind::Tabulated:
      return {c + data_->x.front(), c + data_->x.back()};
  }
  return {c, c};
}

Complex SpatialProfile::operator()(double x) const {
  if (!std::isfinite(x)) throw std::invalid_argument("profile evaluated at a non-finite point");
  return data_->shape(x - data_->center);
}

Complex eval_spatial(const SpatialProfile& profile, double x) { return profile(x); }

SpatialProfile modulate(const SpatialProfile& envelope, double gap, double c) {
  if (envelope.kind() == ProfileKind::Modulated) throw NestedModulation();
  if (envelope.kind() == ProfileKind::Delta) throw DeltaNotModulable();
  if (!std::isfinite(gap) || !(c > 0.0)) {
    throw InvalidProfile("modulation needs a finite gap and c > 0");
  }
  auto d = std::make_shared<SpatialProfile::Data>();
  d->kind = ProfileKind::Modulated;
  d->center = envelope.center();
  d->carrier = gap / c;
  d->envelope = std::make_shared<const SpatialProfile>(envelope);
  d->real = envelope.is_real();
  return SpatialProfile(std::move(d));
}

// ---------------------------------------------------------------------------
// Spectral profiles

SpectralProfile::SpectralProfile(Evaluator evaluator, SpectralProvenance provenance,
                                 quad::QuadratureSpec spec)
    : eval_(std::make_shared<const Evaluator>(std::move(evaluator))),
      provenance_(provenance),
      spec_(std::move(spec)) {}

quad::QuadratureSpec transform_spec() {
  quad::QuadratureSpec spec;
  spec.rel_tol = 1e-11;
  spec.abs_tol = 1e-14;
  spec.max_panels = 200000;
  return spec;
}

namespace {

Complex checked(const quad::IntegrationResult& r, const char* what, double k) {
  if (!r.converged) {
    std::ostringstream msg;
    msg << what << " at k = " << k << " did not converge: error " << r.error_estimate
        << ", worst panel [" << r.worst_panel.lo << ", " << r.worst_panel.hi << "]";
    throw QuadratureFailure(msg.str());
  }
  return r.value;
}

// Transform of the shape about its own centre over [lo, hi] (offsets).
Complex core_transform(const std::function<Complex(double)>& shape, double lo, double hi,
                       std::span<const double> knots, double k,
                       const quad::QuadratureSpec& base) {
  quad::QuadratureSpec spec = base;
  spec.phase_hint = quad::constant_phase_rate(std::abs(k));
  auto f = [&](double u) { return shape(u) * std::polar(1.0, -k * u); };
  if (!knots.empty()) return checked(quad::integrate_1d(f, knots, spec), "Fourier transform", k);
  return checked(quad::integrate_1d(f, lo, hi, spec), "Fourier transform", k);
}

// int_R^inf g(u) cos(w u) du for an algebraically decaying g.
double tail_cos(const std::function<double(double)>& g, double R, double w) {
  w = std::abs(w);
  if (w < 1e-300) {
    thread_local boost::math::quadrature::exp_sinh<double> es;
    return es.integrate([&](double s) { return g(R + s); });
  }
  thread_local boost::math::quadrature::ooura_fourier_cos<double> oc;
  thread_local boost::math::quadrature::ooura_fourier_sin<double> os;
  auto shifted = [&](double s) { return g(R + s); };
  const double c = oc.integrate(shifted, w).first;
  const double s = os.integrate(shifted, w).first;
  return std::cos(w * R) * c - std::sin(w * R) * s;
}

// Double precision cannot resolve a transform below ~eps * int |F|; keep the
// absolute tolerance above that floor.
quad::QuadratureSpec floored(quad::QuadratureSpec spec, double l1) {
  spec.abs_tol = std::max(spec.abs_tol, 1e3 * std::numeric_limits<double>::epsilon() * l1);
  return spec;
}

double l1_norm(const SpatialProfile& p, std::span<const double> knots) {
  quad::QuadratureSpec spec;
  spec.rel_tol = 1e-6;
  spec.max_panels = 100000;
  return quad::integrate_1d([&](double u) { return Complex(std::abs(p(u + p.center()))); },
                            knots, spec)
      .value.real();
}

std::function<Complex(double)> numeric_shape_transform(const SpatialProfile& p,
                                                       const quad::QuadratureSpec& base) {
  // Gaussian and Lorentzian shapes, and their modulations, have int |F| <= 1.
  quad::QuadratureSpec spec = floored(base, 1.0);
  switch (p.kind()) {
    case ProfileKind::Delta:
      throw DeltaNotEvaluable();
    case ProfileKind::Gaussian: {
      const double L = p.width();
      return [L, spec](double k) {
        auto shape = [L](double u) {
          return Complex(std::exp(-u * u / (2.0 * L * L)) / (L * std::sqrt(2.0 * pi)));
        };
        return core_transform(shape, -kGaussianCore * L, kGaussianCore * L, {}, k, spec);
      };
    }
    case ProfileKind::Lorentzian: {
      const double L = p.width();
      return [L, spec](double k) {
        auto g = [L](double u) { return L / (pi * (u * u + L * L)); };
        const double R = kLorentzianCore * L;
        const Complex core =
            core_transform([&](double u) { return Complex(g(u)); }, -R, R, {}, k, spec);
        return core + 2.0 * tail_cos(g, R, k);
      };
    }
    case ProfileKind::Modulated: {
      const auto& env = p.envelope();
      const double q = p.carrier();
      if (env.kind() == ProfileKind::Lorentzian) {
        const double L = env.width();
        return [L, q, spec](double k) {
          auto g = [L](double u) { return L / (pi * (u * u + L * L)); };
          const double R = kLorentzianCore * L;
          const Complex core = core_transform(
              [&](double u) { return Complex(g(u) * std::cos(q * u)); }, -R, R, {}, k, spec);
          // 2 cos(qu) cos(ku) = cos((k-q)u) + cos((k+q)u)
          return core + tail_cos(g, R, k - q) + tail_cos(g, R, k + q);
        };
      }
      auto [lo, hi] = env.core_support();
      lo -= env.center();
      hi -= env.center();
      std::vector<double> knots;
      if (env.kind() == ProfileKind::Tabulated) {
        knots = env.grid();
        spec = floored(base, l1_norm(p, knots));
      }
      return [p, lo, hi, knots, spec](double k) {
        auto shape = [&](double u) { return p(u + p.center()); };
        return core_transform(shape, lo, hi, knots, k, spec);
      };
    }
    case ProfileKind::Tabulated: {
      const auto& x = p.grid();
      spec = floored(base, l1_norm(p, x));
      return [p, x, spec](double k) {
        auto shape = [&](double u) { return p(u + p.center()); };
        return core_transform(shape, x.front(), x.back(), x, k, spec);
      };
    }
  }
  throw InvalidProfile("unknown profile kind");
}

// Analytic transform of the shape about its centre where one exists.
std::function<Complex(double)> shape_transform(const SpatialProfile& p,
                                               const quad::QuadratureSpec& spec,
                                               bool* analytic) {
  switch (p.kind()) {
    case ProfileKind::Delta:
      return [](double) { return Complex(1.0); };
    case ProfileKind::Gaussian: {
      const double L = p.width();
      return [L](double k) { return Complex(std::exp(-0.5 * k * k * L * L)); };
    }
    case ProfileKind::Lorentzian: {
      const double L = p.width();
      return [L](double k) { return Complex(std::exp(-L * std::abs(k))); };
    }
    case ProfileKind::Modulated: {
      auto env = shape_transform(p.envelope(), spec, analytic);
      const double q = p.carrier();
      return [env, q](double k) { return 0.5 * (env(k - q) + env(k + q)); };
    }
    case ProfileKind::Tabulated:
      *analytic = false;
      return numeric_shape_transform(p, spec);
  }
  throw InvalidProfile("unknown profile kind");
}

SpectralProfile with_centre(std::function<Complex(double)> shape, double center,
                            SpectralProvenance provenance, const quad::QuadratureSpec& spec) {
  if (center == 0.0) return SpectralProfile(std::move(shape), provenance, spec);
  return SpectralProfile(
      [shape = std::move(shape), center](double k) {
        return std::polar(1.0, -k * center) * shape(k);
      },
      provenance, spec);
}

}  // namespace

SpectralProfile spectral(const SpatialProfile& profile, const quad::QuadratureSpec& spec) {
  spec.validate();
  bool analytic = true;
  auto shape = shape_transform(profile, spec, &analytic);
  return with_centre(std::move(shape), profile.center(),
                     analytic ? SpectralProvenance::Analytic : SpectralProvenance::Numeric, spec);
}

SpectralProfile numeric_spectral(const SpatialProfile& profile,
                                 const quad::QuadratureSpec& spec) {
  spec.validate();
  return with_centre(numeric_shape_transform(profile, spec), profile.center(),
                     SpectralProvenance::Numeric, spec);
}

SpectralProfile resample(const SpectralProfile& spectrum, double k_lo, double k_hi,
                         std::size_t n) {
  if (!(k_hi > k_lo) || n < 4) throw std::invalid_argument("resample needs k_lo < k_hi, n >= 4");
  const double h = (k_hi - k_lo) / static_cast<double>(n - 1);
  std::vector<double> re(n), im(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Complex v = spectrum(k_lo + h * static_cast<double>(i));
    re[i] = v.real();
    im[i] = v.imag();
  }
  using Spline = boost::math::interpolators::cardinal_cubic_b_spline<double>;
  auto sre = std::make_shared<const Spline>(re.begin(), re.end(), k_lo, h);
  auto sim = std::make_shared<const Spline>(im.begin(), im.end(), k_lo, h);
  return SpectralProfile(
      [sre, sim, k_lo, k_hi](double k) {
        if (k < k_lo || k > k_hi) return Complex{};
        return Complex((*sre)(k), (*sim)(k));
      },
      SpectralProvenance::Numeric, spectrum.quadrature());
}

SpatialProfile load_tabulated_profile(const std::string& path,
                                      SpatialProfile::Normalization normalization) {
  auto table = read_complex_table(path);
  return SpatialProfile::tabulated(std::move(table.x), std::move(table.values), normalization);
}

}  // namespace udw
