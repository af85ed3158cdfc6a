// Copyright 2026 The udw Authors
// SPDX-License-Identifier: Apache-2.0
#include "udw/qed_bridge.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <boost/math/interpolators/makima.hpp>

#include "udw/errors.hpp"
#include "udw/quadrature.hpp"
#include "udw/table_io.hpp"

namespace udw {
namespace {

using std::numbers::pi;

constexpr double kDecay = 1e-10;
constexpr double kNormTol = 1e-8;

double uniform_spacing(const std::vector<double>& x, const char* what) {
  if (x.size() < 5) throw InvalidWavefunction(std::string(what) + " needs at least 5 grid points");
  const double h = (x.back() - x.front()) / static_cast<double>(x.size() - 1);
  if (!(h > 0.0) || !std::isfinite(h))
    throw InvalidWavefunction(std::string(what) + " grid must be strictly increasing");
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    if (std::abs((x[i + 1] - x[i]) - h) > 1e-9 * h)
      throw InvalidWavefunction(std::string(what) + " grid must be uniform");
  }
  return h;
}

std::vector<Complex> fd_gradient(const std::vector<Complex>& f, double h) {
  const std::size_t n = f.size();
  std::vector<Complex> d(n);
  const double s = 1.0 / (12.0 * h);
  for (std::size_t i = 2; i + 2 < n; ++i)
    d[i] = s * (f[i - 2] - 8.0 * f[i - 1] + 8.0 * f[i + 1] - f[i + 2]);
  d[0] = s * (-25.0 * f[0] + 48.0 * f[1] - 36.0 * f[2] + 16.0 * f[3] - 3.0 * f[4]);
  d[1] = s * (-3.0 * f[0] - 10.0 * f[1] + 18.0 * f[2] - 6.0 * f[3] + f[4]);
  d[n - 1] = -s * (-25.0 * f[n - 1] + 48.0 * f[n - 2] - 36.0 * f[n - 3] + 16.0 * f[n - 4] -
                   3.0 * f[n - 5]);
  d[n - 2] = -s * (-3.0 * f[n - 1] - 10.0 * f[n - 2] + 18.0 * f[n - 3] - 6.0 * f[n - 4] +
                   f[n - 5]);
  return d;
}

double max_abs(const std::vector<Complex>& v) {
  double m = 0.0;
  for (const auto& z : v) m = std::max(m, std::abs(z));
  return m;
}

void require_same_grid(const WavefunctionGrid& a, const WavefunctionGrid& b) {
  if (a.x() != b.x()) throw GridMismatch("wavefunctions are sampled on different grids");
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

// ---------------------------------------------------------------------------

WavefunctionGrid::WavefunctionGrid(std::vector<double> x, std::vector<Complex> values,
                                   WavefunctionLabel label)
    : x_(std::move(x)), values_(std::move(values)), label_(label) {
  if (x_.size() != values_.size())
    throw InvalidWavefunction("grid and value arrays differ in length");
  h_ = uniform_spacing(x_, "wavefunction");
  double norm = 0.0;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i].real()) || !std::isfinite(values_[i].imag()))
      throw InvalidWavefunction("wavefunction has non-finite values");
    const double w = (i == 0 || i + 1 == values_.size()) ? 0.5 * h_ : h_;
    norm += w * std::norm(values_[i]);
  }
  if (std::abs(norm - 1.0) > kNormTol) {
    std::ostringstream os;
    os << "wavefunction norm " << norm << " differs from 1 by more than 1e-8";
    throw InvalidWavefunction(os.str());
  }
  const double peak = max_abs(values_);
  if (std::abs(values_.front()) >= kDecay * peak || std::abs(values_.back()) >= kDecay * peak)
    throw InvalidWavefunction("wavefunction does not decay below 1e-10 of its peak at the grid ends");
  grad_ = fd_gradient(values_, h_);
}

WavefunctionGrid load_wavefunction(const std::string& path, WavefunctionLabel label) {
  auto t = read_complex_table(path);
  return WavefunctionGrid(std::move(t.x), std::move(t.values), label);
}

PolarizationSetup PolarizationSetup::unit() {
  return PolarizationSetup{[](double, int) { return Complex(1.0, 0.0); }};
}

Complex PolarizationSetup::operator()(double p, int lambda) const {
  if (lambda != 1 && lambda != -1) throw std::invalid_argument("helicity must be +1 or -1");
  const Complex e = epsilon ? epsilon(p, lambda) : Complex(1.0, 0.0);
  if (std::abs(std::abs(e) - 1.0) > 1e-12) throw std::invalid_argument("polarisation must have unit modulus");
  return e;
}

double mode_measure(double p) {
  if (p == 0.0) throw ZeroMomentum();
  return 1.0 / std::sqrt(2.0 * std::abs(p));
}

Complex momentum_density(const WavefunctionGrid& psi_i, const WavefunctionGrid& psi_j, double p) {
  require_same_grid(psi_i, psi_j);
  const double h = psi_i.spacing();
  if (std::abs(p) * h > pi / 4.0) {
    std::ostringstream os;
    os << "momentum " << p << " under-resolved by grid spacing " << h << " (|p| h > pi/4)";
    throw QuadratureFailure(os.str());
  }
  const auto& x = psi_i.x();
  const auto& a = psi_i.values();
  const auto& d = psi_j.gradient();
  Complex sum{};
  for (std::size_t n = 0; n < x.size(); ++n) {
    const double w = (n == 0 || n + 1 == x.size()) ? 0.5 * h : h;
    sum += w * std::polar(1.0, -p * x[n]) * std::conj(a[n]) * d[n];
  }
  return Complex(0.0, -1.0) * sum;
}

Complex matrix_element_G(const WavefunctionGrid& psi_i, const WavefunctionGrid& psi_j,
                         const PolarizationSetup& pol, double p, int lambda) {
  return pol(p, lambda) * momentum_density(psi_i, psi_j, p);
}

// ---------------------------------------------------------------------------

struct VectorSmearing::Interp {
  using Makima = boost::math::interpolators::makima<std::vector<double>>;
  Makima re;
  Makima im;
};

VectorSmearing::VectorSmearing(std::vector<double> x, std::vector<Complex> values)
    : x_(std::move(x)), values_(std::move(values)) {
  if (x_.size() != values_.size() || x_.size() < 4)
    throw InvalidWavefunction("smearing needs matching grid and values with at least 4 points");
  std::vector<double> xr(x_), xi(x_), yr(values_.size()), yi(values_.size());
  for (std::size_t i = 0; i < values_.size(); ++i) {
    yr[i] = values_[i].real();
    yi[i] = values_[i].imag();
  }
  interp_ = std::make_shared<const Interp>(
      Interp{Interp::Makima(std::move(xr), std::move(yr)), Interp::Makima(std::move(xi), std::move(yi))});
}

Complex VectorSmearing::operator()(double x) const {
  if (x < x_.front() || x > x_.back()) return {};
  return {interp_->re(x), interp_->im(x)};
}

SpatialProfile VectorSmearing::to_profile() const {
  return SpatialProfile::tabulated(x_, values_, SpatialProfile::Normalization::AsGiven);
}

VectorSmearing smearing_from_wavefunctions(const WavefunctionGrid& psi_e,
                                           const WavefunctionGrid& psi_g) {
  require_same_grid(psi_e, psi_g);
  const auto& e = psi_e.values();
  const auto& dg = psi_g.gradient();
  std::vector<Complex> f(e.size());
  for (std::size_t i = 0; i < e.size(); ++i) f[i] = Complex(0.0, -1.0) * std::conj(e[i]) * dg[i];
  return VectorSmearing(psi_e.x(), std::move(f));
}

// ---------------------------------------------------------------------------

RadialWavefunction::RadialWavefunction(std::vector<double> r, std::vector<Complex> values)
    : r_(std::move(r)), values_(std::move(values)) {
  if (r_.size() != values_.size()) throw InvalidWavefunction("grid and value arrays differ in length");
  const double h = uniform_spacing(r_, "radial wavefunction");
  if (r_.front() != 0.0) throw InvalidWavefunction("radial grid must start at r = 0");
  if (r_.size() % 2 == 0) throw InvalidWavefunction("radial grid needs an odd number of points");
  double norm = 0.0;
  for (std::size_t i = 0; i < r_.size(); ++i) {
    const double w = (i == 0 || i + 1 == r_.size()) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
    norm += w * r_[i] * r_[i] * std::norm(values_[i]);
  }
  norm *= 4.0 * pi * h / 3.0;
  if (std::abs(norm - 1.0) > kNormTol) {
    std::ostringstream os;
    os << "radial wavefunction norm " << norm << " differs from 1 by more than 1e-8";
    throw InvalidWavefunction(os.str());
  }
  if (std::abs(values_.back()) >= kDecay * max_abs(values_))
    throw InvalidWavefunction("radial wavefunction does not decay at the outer grid end");
  grad_ = fd_gradient(values_, h);
}

RadialWavefunction RadialWavefunction::hydrogen_1s(double a0, double r_max, std::size_t n) {
  if (!(a0 > 0.0) || !(r_max > 0.0)) throw InvalidWavefunction("a0 and r_max must be positive");
  std::vector<double> r(n);
  std::vector<Complex> v(n);
  const double pre = 1.0 / std::sqrt(pi * a0 * a0 * a0);
  for (std::size_t i = 0; i < n; ++i) {
    r[i] = r_max * static_cast<double>(i) / static_cast<double>(n - 1);
    v[i] = pre * std::exp(-r[i] / a0);
  }
  return RadialWavefunction(std::move(r), std::move(v));
}

RadialSmearing radial_smearing(const RadialWavefunction& psi_e, const RadialWavefunction& psi_g) {
  if (psi_e.r() != psi_g.r()) throw GridMismatch("radial wavefunctions are sampled on different grids");
  RadialSmearing s;
  s.r = psi_e.r();
  s.radial_component.resize(s.r.size());
  for (std::size_t i = 0; i < s.r.size(); ++i)
    s.radial_component[i] = Complex(0.0, -1.0) * std::conj(psi_e.values()[i]) * psi_g.gradient()[i];
  return s;
}

// ---------------------------------------------------------------------------

namespace {

struct ConstantPair {
  double full = 0.0;
  double doubled = 0.0;  // cutoff at 2 p_min
};

ConstantPair ir_constant(const std::function<double(double)>& f, double p_min, double p_max,
                         double abs_tol, double rel_tol, const char* name) {
  quad::QuadratureSpec spec;
  spec.rel_tol = rel_tol;
  spec.abs_tol = abs_tol;
  spec.max_panels = 20000;
  auto g = [&](double m) { return Complex(f(m)); };
  std::vector<double> upper{2.0 * p_min};
  for (double x = 4.0 * p_min; x < p_max; x *= 2.0) upper.push_back(x);
  upper.push_back(p_max);
  const auto lo = quad::integrate_1d(g, p_min, 2.0 * p_min, spec);
  const auto hi = quad::integrate_1d(g, upper, spec);
  for (const auto* r : {&lo, &hi}) {
    if (!r->converged) {
      std::ostringstream os;
      os << name << " integral did not converge: estimate " << r->value.real() << ", error "
         << r->error_estimate << ", worst panel [" << r->worst_panel.lo << ", "
         << r->worst_panel.hi << "]";
      throw QuadratureFailure(os.str());
    }
  }
  return {lo.value.real() + hi.value.real(), hi.value.real()};
}

}  // namespace

HamiltonianDecomposition decompose(const WavefunctionGrid& psi_g, const WavefunctionGrid& psi_e,
                                   const PolarizationSetup& pol, const std::vector<double>& p_grid,
                                   const DecompositionOptions& options) {
  require_same_grid(psi_g, psi_e);
  if (!(options.ir_fraction > 0.0) || !(options.uv_multiple > options.ir_fraction) ||
      !(options.rel_tol > 0.0) || !std::isfinite(options.coupling))
    throw std::invalid_argument("invalid decomposition options");

  HamiltonianDecomposition d;
  d.coupling = options.coupling;
  d.polarization = pol;

  const double h = psi_g.spacing();
  double grad2 = 0.0;
  for (std::size_t i = 0; i < psi_g.size(); ++i) {
    const double w = (i == 0 || i + 1 == psi_g.size()) ? 0.5 * h : h;
    grad2 += w * std::norm(psi_g.gradient()[i]);
  }
  const double p_dom = std::sqrt(grad2);
  if (!(p_dom > 0.0)) throw InvalidWavefunction("ground state has no momentum scale");
  d.p_min = options.ir_fraction * p_dom;
  d.p_max = std::min(pi / (4.0 * h), options.uv_multiple * p_dom);
  if (!(d.p_max > 2.0 * d.p_min)) throw QuadratureFailure("grid too coarse for the requested cutoffs");

  for (double p : p_grid) {
    if (!(std::abs(p) >= d.p_min)) {
      std::ostringstream os;
      os << "momentum " << p << " lies below the infrared cutoff " << d.p_min;
      throw IRCutoffRequired(os.str());
    }
  }

  auto g = std::make_shared<const WavefunctionGrid>(psi_g);
  auto e = std::make_shared<const WavefunctionGrid>(psi_e);
  d.density_gg = [g](double p) { return momentum_density(*g, *g, p); };
  d.density_ee = [e](double p) { return momentum_density(*e, *e, p); };
  d.density_ge = [g, e](double p) { return momentum_density(*g, *e, p); };
  d.density_eg = [g, e](double p) { return momentum_density(*e, *g, p); };

  const Complex I(0.0, 1.0);
  const double ec = options.coupling;
  d.p = p_grid;
  for (double p : p_grid) {
    const Complex gg = d.density_gg(p), ee = d.density_ee(p), ge = d.density_ge(p), eg = d.density_eg(p);
    d.G_gg.push_back(gg);
    d.G_ee.push_back(ee);
    d.G_ge.push_back(ge);
    d.G_eg.push_back(eg);
    const Complex eps = pol(p, 1) + pol(p, -1);
    const double m = ec * mode_measure(p);
    d.alpha_density.push_back(m * eps * (gg + ee) / 2.0);
    d.beta_density.push_back(m * eps * (gg - ee) / 2.0);
    d.gamma_density.push_back(m * eps * (ge + eg) / 2.0);
    d.delta_density.push_back(m * eps * (ge - eg) / (2.0 * I));
  }

  // Integrands over m = |p|, summed over both signs of p and both
  // helicities; conj(eps) eps = 1 leaves a factor 2 from the helicities.
  enum Which { Gamma, Delta, Beta };
  auto integrand = [&](Which w) {
    return [&, w](double m) {
      double s = 0.0;
      for (double p : {m, -m}) {
        const Complex gg = d.density_gg(p), ee = d.density_ee(p);
        Complex x;
        switch (w) {
          case Gamma: x = d.density_ge(p) + d.density_eg(p); break;
          case Delta: x = (d.density_ge(p) - d.density_eg(p)) / I; break;
          case Beta: x = gg - ee; break;
        }
        s += 2.0 * (std::conj(gg + ee) * x).real();
      }
      return s / m;
    };
  };
  const double abs_tol = 1e-13 * p_dom * p_dom;
  const double pre = ec * ec / 4.0;
  const auto cg = ir_constant(integrand(Gamma), d.p_min, d.p_max, abs_tol, options.rel_tol, "alpha_gamma");
  const auto cd = ir_constant(integrand(Delta), d.p_min, d.p_max, abs_tol, options.rel_tol, "alpha_delta");
  const auto cb = ir_constant(integrand(Beta), d.p_min, d.p_max, abs_tol, options.rel_tol, "alpha_beta");
  d.alpha_gamma = pre * cg.full;
  d.alpha_delta = pre * cd.full;
  d.alpha_beta = pre * cb.full;
  d.alpha_gamma_2pmin = pre * cg.doubled;
  d.alpha_delta_2pmin = pre * cd.doubled;
  d.alpha_beta_2pmin = pre * cb.doubled;
  d.gap_shift = d.alpha_beta;
  return d;
}

Complex vacuum_mode_shift(const HamiltonianDecomposition& decomp, double p, int lambda) {
  if (p == 0.0) throw ZeroMomentum();
  if (!decomp.density_gg || !decomp.density_ee)
    throw std::invalid_argument("decomposition carries no densities");
  const Complex sum = decomp.density_gg(p) + decomp.density_ee(p);
  return decomp.coupling * decomp.polarization(p, lambda) * sum / std::pow(2.0 * std::abs(p), 1.5);
}

void write_decomposition_csv(const HamiltonianDecomposition& d, std::ostream& out) {
  out << "# coupling = " << fmt(d.coupling) << "\n"
      << "# p_min = " << fmt(d.p_min) << "\n"
      << "# p_max = " << fmt(d.p_max) << "\n"
      << "# alpha_gamma = " << fmt(d.alpha_gamma) << "\n"
      << "# alpha_delta = " << fmt(d.alpha_delta) << "\n"
      << "# alpha_beta = " << fmt(d.alpha_beta) << "\n"
      << "# gap_shift = " << fmt(d.gap_shift) << "\n"
      << "# alpha_gamma_at_2pmin = " << fmt(d.alpha_gamma_2pmin) << "\n"
      << "# alpha_delta_at_2pmin = " << fmt(d.alpha_delta_2pmin) << "\n"
      << "# alpha_beta_at_2pmin = " << fmt(d.alpha_beta_2pmin) << "\n";
  out << "p,re_alpha,im_alpha,re_beta,im_beta,re_gamma,im_gamma,re_delta,im_delta\n";
  for (std::size_t i = 0; i < d.p.size(); ++i) {
    out << fmt(d.p[i]);
    for (const auto* v : {&d.alpha_density, &d.beta_density, &d.gamma_density, &d.delta_density})
      out << ',' << fmt((*v)[i].real()) << ',' << fmt((*v)[i].imag());
    out << '\n';
  }
}

}  // namespace udw
