// Copyright 2026 The udw Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <functional>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "udw/profiles.hpp"

namespace udw {

enum class WavefunctionLabel { Ground, Excited };

/// One-dimensional wavefunction sampled on a uniform grid.
///
/// The constructor enforces unit norm (trapezoid rule, 1e-8) and decay at
/// both ends (|Psi| < 1e-10 max|Psi|), so boundary terms of integrations by
/// parts vanish to that level.
class WavefunctionGrid {
 public:
  WavefunctionGrid(std::vector<double> x, std::vector<Complex> values,
                   WavefunctionLabel label = WavefunctionLabel::Ground);

  const std::vector<double>& x() const noexcept { return x_; }
  const std::vector<Complex>& values() const noexcept { return values_; }
  WavefunctionLabel label() const noexcept { return label_; }
  double spacing() const noexcept { return h_; }
  std::size_t size() const noexcept { return x_.size(); }

  /// d Psi / dx on the grid: 4th-order centred differences inside,
  /// 4th-order one-sided stencils on the two outermost points per side.
  const std::vector<Complex>& gradient() const noexcept { return grad_; }

 private:
  std::vector<double> x_;
  std::vector<Complex> values_;
  std::vector<Complex> grad_;
  WavefunctionLabel label_;
  double h_;
};

/// Loads `x Re[Psi] [Im[Psi]]` columns; '#' starts a comment.
WavefunctionGrid load_wavefunction(const std::string& path, WavefunctionLabel label);

/// Polarisation epsilon(p, lambda) for the two helicities lambda = +1, -1.
/// In one dimension it is a unit complex number; the default is 1.
struct PolarizationSetup {
  std::function<Complex(double p, int lambda)> epsilon;

  static PolarizationSetup unit();
  /// epsilon(p, lambda); throws std::invalid_argument unless |epsilon| = 1
  /// within 1e-12.
  Complex operator()(double p, int lambda) const;
};

/// Mode weight 1 / sqrt(2|p|) of the field expansion.
double mode_measure(double p);

/// G_ij(p) = int dx e^{-ipx} Psi_i^*(x) [-i dPsi_j/dx] by the trapezoid rule,
/// without the polarisation factor. Throws GridMismatch for different grids
/// and QuadratureFailure if |p| h > pi/4 (phase under-resolved).
Complex momentum_density(const WavefunctionGrid& psi_i, const WavefunctionGrid& psi_j, double p);

/// epsilon(p, lambda) * momentum_density(psi_i, psi_j, p).
Complex matrix_element_G(const WavefunctionGrid& psi_i, const WavefunctionGrid& psi_j,
                         const PolarizationSetup& pol, double p, int lambda = 1);

/// F(x) = -i Psi_e^*(x) dPsi_g/dx on the shared grid (single spatial component).
class VectorSmearing {
 public:
  VectorSmearing(std::vector<double> x, std::vector<Complex> values);

  const std::vector<double>& x() const noexcept { return x_; }
  const std::vector<Complex>& values() const noexcept { return values_; }
  /// Interpolated value; zero outside the grid.
  Complex operator()(double x) const;
  /// Tabulated profile with the values as given.
  SpatialProfile to_profile() const;

 private:
  struct Interp;
  std::vector<double> x_;
  std::vector<Complex> values_;
  std::shared_ptr<const Interp> interp_;
};

VectorSmearing smearing_from_wavefunctions(const WavefunctionGrid& psi_e,
                                           const WavefunctionGrid& psi_g);

/// Spherically symmetric three-dimensional wavefunction psi(r) on a uniform
/// radial grid starting at r = 0. Norm 4 pi int r^2 |psi|^2 dr = 1 (Simpson,
/// 1e-8) and decay at the outer end are enforced.
class RadialWavefunction {
 public:
  RadialWavefunction(std::vector<double> r, std::vector<Complex> values);

  /// psi_1s(r) = exp(-r/a0) / sqrt(pi a0^3) on n points of [0, r_max].
  static RadialWavefunction hydrogen_1s(double a0, double r_max, std::size_t n);

  const std::vector<double>& r() const noexcept { return r_; }
  const std::vector<Complex>& values() const noexcept { return values_; }
  const std::vector<Complex>& gradient() const noexcept { return grad_; }

 private:
  std::vector<double> r_;
  std::vector<Complex> values_;
  std::vector<Complex> grad_;
};

/// Radial component F_r(r) of F = -i psi_e^* grad psi_g = F_r(r) u_r.
struct RadialSmearing {
  std::vector<double> r;
  std::vector<Complex> radial_component;
};

RadialSmearing radial_smearing(const RadialWavefunction& psi_e, const RadialWavefunction& psi_g);

struct DecompositionOptions {
  /// Coupling e.
  double coupling = 1.0;
  /// Infrared cutoff in units of the ground state's rms momentum.
  double ir_fraction = 1e-3;
  /// Ultraviolet cutoff in units of the same momentum scale.
  double uv_multiple = 30.0;
  double rel_tol = 1e-9;
};

/// Pauli-basis form alpha I + beta sigma_z + gamma sigma_x + delta sigma_y of
/// the (1+1)-dimensional p.A coupling.
///
/// Each density is the coefficient of a_p^dagger in its Pauli component,
///   e / sqrt(2|p|) sum_lambda epsilon(p, lambda) (combination of G_ij) / 2,
/// the Hermitian conjugate part being fixed by it. The constants are
///   alpha_X = e^2/4 Re int dp/|p| sum_lambda conj(G_gg + G_ee) X
/// with X = G_ge + G_eg (gamma), (G_ge - G_eg)/i (delta), G_gg - G_ee (beta),
/// integrated over p_min <= |p| <= p_max on both signs of p.
struct HamiltonianDecomposition {
  std::vector<double> p;
  std::vector<Complex> G_gg, G_ee, G_ge, G_eg;  // momentum_density, no epsilon
  std::vector<Complex> alpha_density, beta_density, gamma_density, delta_density;

  std::function<Complex(double)> density_gg, density_ee, density_ge, density_eg;

  double alpha_gamma = 0.0;
  double alpha_delta = 0.0;
  double alpha_beta = 0.0;
  /// alpha_beta, reabsorbed into the gap.
  double gap_shift = 0.0;

  /// The same constants with the infrared cutoff doubled.
  double alpha_gamma_2pmin = 0.0;
  double alpha_delta_2pmin = 0.0;
  double alpha_beta_2pmin = 0.0;

  double coupling = 1.0;
  double p_min = 0.0;
  double p_max = 0.0;
  PolarizationSetup polarization;
};

/// Throws GridMismatch, IRCutoffRequired if some |p| < p_min,
/// QuadratureFailure if a constant misses its tolerance.
HamiltonianDecomposition decompose(const WavefunctionGrid& psi_g, const WavefunctionGrid& psi_e,
                                   const PolarizationSetup& pol, const std::vector<double>& p_grid,
                                   const DecompositionOptions& options = {});

/// e epsilon(p, lambda) [G_gg(p) + G_ee(p)] / (2|p|)^{3/2}: offset between the
/// displaced mode b_p and a_p. Throws ZeroMomentum for p == 0.
Complex vacuum_mode_shift(const HamiltonianDecomposition& decomp, double p, int lambda = 1);

/// '#' header with constants and cutoffs, then p and Re/Im of each density.
void write_decomposition_csv(const HamiltonianDecomposition& decomp, std::ostream& out);

}  // namespace udw
