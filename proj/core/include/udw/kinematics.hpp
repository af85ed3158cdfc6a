// Copyright 2026 The udw Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>

namespace udw {

/// Uniform proper acceleration of a rigid detector in Fermi-Walker
/// coordinates. a == 0 selects the inertial branch everywhere.
class TrajectoryFrame {
 public:
  /// Throws HorizonCrossing unless a * extent / c^2 < 1, i.e. the whole
  /// detector support stays on the near side of the horizon at chi = -c^2/a.
  explicit TrajectoryFrame(double acceleration = 0.0, double c = 1.0, double extent = 0.0);

  double acceleration() const noexcept { return a_; }
  double c() const noexcept { return c_; }
  bool inertial() const noexcept { return a_ == 0.0; }

  /// c^2 / a; infinite when inertial.
  double horizon_distance() const noexcept;

  /// Re-checks the horizon condition for a profile of half-width `extent`.
  void check_extent(double extent) const;

 private:
  double a_;
  double c_;
};

struct FermiWalkerEvent {
  double tau = 0.0;
  double chi = 0.0;
  double t = 0.0;
  double x = 0.0;
};

/// Four-vector in (c t, x, y, z) components, signature (+,-,-,-).
using FourVector = std::array<double, 4>;

double minkowski_dot(const FourVector& u, const FourVector& v) noexcept;

/// Lab event of the detector point chi at proper time tau:
///   t = (c/a + chi/c) sinh(a tau / c),  x = (c^2/a + chi) cosh(a tau / c).
/// The inertial frame returns t = tau, x = chi.
/// Throws HorizonCrossing if chi <= -c^2/a.
FermiWalkerEvent fw_event(const TrajectoryFrame& frame, double tau, double chi);

/// Spatial unit vector e_chi1 = (sinh(a tau/c), cosh(a tau/c), 0, 0).
FourVector dreibein(const TrajectoryFrame& frame, double tau);

/// Unit four-velocity of the centre worldline, (cosh, sinh, 0, 0).
FourVector four_velocity(const TrajectoryFrame& frame, double tau);

/// L(k, tau) = k exp(-sign(k) a tau / c). Right movers redshift, left
/// movers blueshift along the trajectory.
double chirp_factor(const TrajectoryFrame& frame, double k, double tau);

/// Plane-wave phase k x - c|k| t at the event (tau, chi), computed from the
/// coordinate map. Equals chirp_factor(k, tau) * (chi + c^2/a) for a > 0.
/// Throws ZeroWavenumber for k == 0.
double phase(const TrajectoryFrame& frame, double k, double tau, double chi);

/// Phase of mode k seen at the detector centre, with the lab origin placed
/// at the centre's position at tau = 0:
///   (c^2/a) (L(k, tau) - k),   continuing to -c|k| tau when a == 0.
double centre_phase(const TrajectoryFrame& frame, double k, double tau);

/// Lab frequency resonant with the detector at proper time tau: gap * exp(a tau / c).
double resonance_frequency(const TrajectoryFrame& frame, double gap, double tau);

}  // namespace udw
