// Copyright 2026 The udw Authors
// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "udw/errors.hpp"
#include "udw/qed_bridge.hpp"

namespace {

using udw::Complex;
using udw::WavefunctionGrid;
using udw::WavefunctionLabel;
using std::numbers::pi;

const std::string kData = UDW_TEST_DATA_DIR;
const Complex I(0.0, 1.0);

std::vector<double> uniform(double half, std::size_t n) {
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = -half + 2.0 * half * static_cast<double>(i) / static_cast<double>(n - 1);
  return x;
}

// Oscillator ground and first excited states, unit width.
WavefunctionGrid oscillator(int level, const std::vector<double>& x) {
  std::vector<Complex> v;
  for (double xi : x) {
    const double g = std::pow(pi, -0.25) * std::exp(-xi * xi / 2);
    v.emplace_back(level == 0 ? g : std::sqrt(2.0) * xi * g);
  }
  return WavefunctionGrid(x, v, level == 0 ? WavefunctionLabel::Ground : WavefunctionLabel::Excited);
}

TEST(Wavefunction, Validation) {
  const auto x = uniform(10.0, 201);
  EXPECT_NO_THROW(oscillator(0, x));
  std::vector<Complex> doubled;
  for (const auto& v : oscillator(0, x).values()) doubled.push_back(2.0 * v);
  EXPECT_THROW(WavefunctionGrid(x, doubled), udw::InvalidWavefunction);
  auto bent = x;
  bent[5] += 1e-3;
  EXPECT_THROW(WavefunctionGrid(bent, oscillator(0, x).values()), udw::InvalidWavefunction);
  const auto narrow = uniform(3.0, 201);
  std::vector<Complex> wide;
  double norm = 0.0;
  for (double xi : narrow) wide.emplace_back(std::exp(-xi * xi / 8));
  for (const auto& v : wide) norm += std::norm(v) * (narrow[1] - narrow[0]);
  for (auto& v : wide) v /= std::sqrt(norm);
  EXPECT_THROW(WavefunctionGrid(narrow, wide), udw::InvalidWavefunction);
  EXPECT_THROW(WavefunctionGrid({0, 1, 2, 3}, {0, 1, 1, 0}), udw::InvalidWavefunction);
}

TEST(Wavefunction, GradientMatchesAnalytic) {
  const auto x = uniform(12.0, 2401);
  const auto psi = oscillator(1, x);
  double peak = 0.0;
  for (const auto& g : psi.gradient()) peak = std::max(peak, std::abs(g));
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double exact = std::sqrt(2.0) * std::pow(pi, -0.25) * (1 - x[i] * x[i]) * std::exp(-x[i] * x[i] / 2);
    if (std::abs(1 - x[i] * x[i]) < 0.1 || std::abs(exact) < 1e-6 * peak) continue;  // nodes and tails
    EXPECT_NEAR(psi.gradient()[i].real() / exact, 1.0, 1e-6) << x[i];
  }
}

TEST(Wavefunction, LoadsBundledFiles) {
  for (const char* name : {"gaussian_ground.dat", "oscillator_excited.dat", "softcore_ground.dat",
                           "softcore_excited.dat"}) {
    EXPECT_NO_THROW(udw::load_wavefunction(kData + "/" + name, WavefunctionLabel::Ground)) << name;
  }
  EXPECT_THROW(udw::load_wavefunction(kData + "/missing.dat", WavefunctionLabel::Ground), udw::Error);
}

TEST(MatrixElement, BoundaryTermVanishes) {
  for (const char* name : {"gaussian_ground.dat", "oscillator_excited.dat", "softcore_excited.dat"}) {
    const auto psi = udw::load_wavefunction(kData + "/" + name, WavefunctionLabel::Ground);
    EXPECT_LT(std::abs(udw::momentum_density(psi, psi, 0.0)), 1e-8) << name;
  }
}

TEST(MatrixElement, GaussianClosedForm) {
  const auto psi = udw::load_wavefunction(kData + "/gaussian_ground.dat", WavefunctionLabel::Ground);
  const auto pol = udw::PolarizationSetup::unit();
  for (double p : {-2.0, 0.3, 1.0, 3.0, 6.0}) {
    const Complex g = udw::matrix_element_G(psi, psi, pol, p);
    EXPECT_NEAR(g.real(), 0.5 * p * std::exp(-p * p / 4), 1e-8) << p;
    EXPECT_NEAR(g.imag(), 0.0, 1e-8) << p;
  }
}

TEST(MatrixElement, PolarisationAndHelicity) {
  const auto psi = udw::load_wavefunction(kData + "/gaussian_ground.dat", WavefunctionLabel::Ground);
  udw::PolarizationSetup pol;
  pol.epsilon = [](double p, int lambda) { return std::polar(1.0, 0.3 * p * lambda); };
  const Complex bare = udw::momentum_density(psi, psi, 1.5);
  EXPECT_LT(std::abs(udw::matrix_element_G(psi, psi, pol, 1.5, -1) - std::polar(1.0, -0.45) * bare), 1e-15);
  udw::PolarizationSetup bad;
  bad.epsilon = [](double, int) { return Complex(0.5); };
  EXPECT_THROW(udw::matrix_element_G(psi, psi, bad, 1.0), std::invalid_argument);
  EXPECT_THROW(pol(1.0, 0), std::invalid_argument);
  EXPECT_DOUBLE_EQ(udw::mode_measure(-2.0), 0.5);
  EXPECT_THROW(udw::mode_measure(0.0), udw::ZeroMomentum);
}

TEST(MatrixElement, ErrorsOnMismatchAndAliasing) {
  const auto a = udw::load_wavefunction(kData + "/gaussian_ground.dat", WavefunctionLabel::Ground);
  const auto b = udw::load_wavefunction(kData + "/oscillator_excited.dat", WavefunctionLabel::Excited);
  EXPECT_THROW(udw::momentum_density(a, b, 1.0), udw::GridMismatch);
  EXPECT_THROW(udw::momentum_density(a, a, 0.8 * pi / a.spacing()), udw::QuadratureFailure);
}

TEST(MatrixElement, DipolarLimit) {
  const auto x = uniform(12.0, 2401);
  const auto g = oscillator(0, x), e = oscillator(1, x);
  const double extent = 12.0;
  const Complex g0 = udw::momentum_density(g, e, 0.0);
  // <0| -i d/dx |1> = -i / sqrt(2) for unit oscillator width.
  EXPECT_NEAR(std::abs(g0 - Complex(0.0, -1.0 / std::sqrt(2.0))), 0.0, 1e-8);
  for (double p : {1e-5, 5e-5, -8e-5}) {
    ASSERT_LT(std::abs(p) * extent, 1e-3);
    EXPECT_LT(std::abs(udw::momentum_density(g, e, p) - g0) / std::abs(g0), 1e-4);
  }
}

TEST(Smearing, GaussianPairIsImaginaryAndOdd) {
  const auto psi = udw::load_wavefunction(kData + "/gaussian_ground.dat", WavefunctionLabel::Ground);
  const auto f = udw::smearing_from_wavefunctions(psi, psi);
  const auto& v = f.values();
  double peak = 0.0;
  for (const auto& c : v) peak = std::max(peak, std::abs(c));
  for (std::size_t i = 0; i < v.size(); ++i) {
    EXPECT_EQ(v[i].real(), 0.0);
    EXPECT_NEAR(v[i].imag(), -v[v.size() - 1 - i].imag(), 1e-12 * peak);
    // -i psi psi' = i x psi^2
    const double xi = f.x()[i];
    EXPECT_NEAR(v[i].imag(), xi * std::exp(-xi * xi) / std::sqrt(pi), 1e-9);
  }
  EXPECT_LT(std::abs(v.front()), 1e-10 * peak);
  EXPECT_LT(std::abs(v.back()), 1e-10 * peak);
  EXPECT_NEAR(f(0.3).imag(), 0.3 * std::exp(-0.09) / std::sqrt(pi), 1e-9);
  EXPECT_EQ(f(11.0), Complex(0.0));
}

TEST(Smearing, ProfileTransformIsMomentumDensity) {
  const auto x = uniform(12.0, 2401);
  const auto g = oscillator(0, x), e = oscillator(1, x);
  const auto f = udw::smearing_from_wavefunctions(e, g);
  const auto s = udw::spectral(f.to_profile());
  for (double k : {-1.0, 0.0, 0.5, 2.0}) {
    EXPECT_LT(std::abs(s(k) - udw::momentum_density(e, g, k)), 1e-6) << k;
  }
}

TEST(Smearing, HydrogenRadialClosedForm) {
  for (double a0 : {1.0, 0.529}) {
    const auto psi = udw::RadialWavefunction::hydrogen_1s(a0, 40.0 * a0, 40001);
    const auto f = udw::radial_smearing(psi, psi);
    const double scale = 1.0 / (pi * std::pow(a0, 4));
    double worst = 0.0;
    for (std::size_t i = 0; i < f.r.size(); ++i) {
      const Complex exact = I * std::exp(-2.0 * f.r[i] / a0) * scale;
      worst = std::max(worst, std::abs(f.radial_component[i] - exact) / scale);
    }
    EXPECT_LT(worst, 1e-8) << a0;
  }
  EXPECT_THROW(udw::RadialWavefunction::hydrogen_1s(1.0, 40.0, 40000), udw::InvalidWavefunction);
}

std::vector<double> p_grid(double lo, double hi, std::size_t n) {
  std::vector<double> p;
  for (std::size_t i = 0; i < n; ++i) {
    const double v = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    p.push_back(-v);
    p.push_back(v);
  }
  std::sort(p.begin(), p.end());
  return p;
}

TEST(Decompose, IdenticalStatesHaveNoBeta) {
  const auto psi = udw::load_wavefunction(kData + "/gaussian_ground.dat", WavefunctionLabel::Ground);
  const auto d = udw::decompose(psi, psi, udw::PolarizationSetup::unit(), p_grid(0.05, 5.0, 100));
  double sup = 0.0;
  for (const auto& b : d.beta_density) sup = std::max(sup, std::abs(b));
  EXPECT_LT(sup, 1e-10);
  EXPECT_EQ(d.alpha_beta, 0.0);
  EXPECT_EQ(d.gap_shift, d.alpha_beta);
  for (std::size_t i = 0; i < d.p.size(); ++i) {
    EXPECT_EQ(d.G_gg[i] - d.G_ee[i], Complex(0.0));
  }
}

TEST(Decompose, SoftcorePairConstants) {
  const auto g = udw::load_wavefunction(kData + "/softcore_ground.dat", WavefunctionLabel::Ground);
  const auto e = udw::load_wavefunction(kData + "/softcore_excited.dat", WavefunctionLabel::Excited);
  udw::DecompositionOptions opt;
  const auto d = udw::decompose(g, e, udw::PolarizationSetup::unit(), p_grid(0.05, 4.0, 80), opt);
  EXPECT_LT(std::abs(d.alpha_gamma / opt.coupling), 10.0);
  EXPECT_TRUE(std::isfinite(d.alpha_delta));
  EXPECT_NE(d.alpha_beta, 0.0);
  EXPECT_GT(d.p_min, 0.0);
  EXPECT_GT(d.p_max, 2.0 * d.p_min);
  // The densities are tabulated exactly as the Pauli combinations of G.
  for (std::size_t i = 0; i < d.p.size(); i += 17) {
    const double w = opt.coupling * udw::mode_measure(d.p[i]);
    EXPECT_NEAR(std::abs(d.gamma_density[i] - w * (d.G_ge[i] + d.G_eg[i])), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(d.beta_density[i] - w * (d.G_gg[i] - d.G_ee[i])), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(d.density_ge(d.p[i]) - d.G_ge[i]), 0.0, 1e-12);
  }

  opt.coupling = 0.1;
  const auto small = udw::decompose(g, e, udw::PolarizationSetup::unit(), p_grid(0.05, 4.0, 80), opt);
  EXPECT_NEAR(small.alpha_gamma, 0.01 * d.alpha_gamma, 1e-12 * std::abs(d.alpha_gamma));
  EXPECT_NEAR(small.alpha_beta, 0.01 * d.alpha_beta, 1e-12 * std::abs(d.alpha_beta));
  EXPECT_NEAR(std::abs(small.gamma_density[3]), 0.1 * std::abs(d.gamma_density[3]), 1e-15);
}

TEST(Decompose, InfraredCutoffEnforced) {
  const auto psi = udw::load_wavefunction(kData + "/gaussian_ground.dat", WavefunctionLabel::Ground);
  EXPECT_THROW(udw::decompose(psi, psi, udw::PolarizationSetup::unit(), {-1.0, 1e-6, 1.0}),
               udw::IRCutoffRequired);
  EXPECT_THROW(udw::decompose(psi, psi, udw::PolarizationSetup::unit(), {0.0, 1.0}),
               udw::IRCutoffRequired);
  const auto other = udw::load_wavefunction(kData + "/oscillator_excited.dat", WavefunctionLabel::Excited);
  EXPECT_THROW(udw::decompose(psi, other, udw::PolarizationSetup::unit(), {1.0}), udw::GridMismatch);
}

TEST(Decompose, VacuumModeShift) {
  const auto psi = udw::load_wavefunction(kData + "/gaussian_ground.dat", WavefunctionLabel::Ground);
  udw::DecompositionOptions opt;
  opt.coupling = 0.3;
  const auto d = udw::decompose(psi, psi, udw::PolarizationSetup::unit(), p_grid(0.05, 5.0, 100), opt);
  const Complex shift = udw::vacuum_mode_shift(d, 1.0);
  EXPECT_NEAR(shift.real(), 0.3 * 2.0 * 0.5 * std::exp(-0.25) / std::pow(2.0, 1.5), 1e-8);
  EXPECT_NEAR(shift.imag(), 0.0, 1e-8);
  EXPECT_THROW(udw::vacuum_mode_shift(d, 0.0), udw::ZeroMomentum);
  opt.coupling = 0.0;
  const auto off = udw::decompose(psi, psi, udw::PolarizationSetup::unit(), p_grid(0.05, 5.0, 100), opt);
  EXPECT_EQ(udw::vacuum_mode_shift(off, 1.0), Complex(0.0));
  EXPECT_EQ(off.alpha_gamma, 0.0);
}

TEST(Decompose, CsvExport) {
  const auto psi = udw::load_wavefunction(kData + "/gaussian_ground.dat", WavefunctionLabel::Ground);
  const auto d = udw::decompose(psi, psi, udw::PolarizationSetup::unit(), p_grid(0.1, 2.0, 5));
  std::ostringstream out;
  udw::write_decomposition_csv(d, out);
  const std::string s = out.str();
  EXPECT_NE(s.find("# alpha_gamma = "), std::string::npos);
  EXPECT_NE(s.find("# p_min = "), std::string::npos);
  std::istringstream in(s);
  std::string line;
  int rows = -1;  // column header
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] != '#') ++rows;
  }
  EXPECT_EQ(rows, 10);
}

}  // namespace
