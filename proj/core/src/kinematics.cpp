// Copyright 2026 The udw Authors
// SPDX-License-Identifier: Apache-2.0
#include "udw/kinematics.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "udw/errors.hpp"

namespace udw {

TrajectoryFrame::TrajectoryFrame(double acceleration, double c, double extent)
    : a_(acceleration), c_(c) {
  if (!(acceleration >= 0.0) || !std::isfinite(acceleration)) {
    throw std::invalid_argument("proper acceleration must be finite and >= 0");
  }
  if (!(c > 0.0) || !std::isfinite(c)) {
    throw std::invalid_argument("speed of light must be finite and > 0");
  }
  check_extent(extent);
}

double TrajectoryFrame::horizon_distance() const noexcept {
  return inertial() ? std::numeric_limits<double>::infinity() : c_ * c_ / a_;
}

void TrajectoryFrame::check_extent(double extent) const {
  if (inertial()) return;
  if (!(a_ * extent / (c_ * c_) < 1.0)) {
    std::ostringstream msg;
    msg << "detector extent " << extent << " reaches the horizon at distance "
        << horizon_distance() << " (a * extent / c^2 must be < 1)";
    throw HorizonCrossing(msg.str());
  }
}

double minkowski_dot(const FourVector& u, const FourVector& v) noexcept {
  return u[0] * v[0] - u[1] * v[1] - u[2] * v[2] - u[3] * v[3];
}

FermiWalkerEvent fw_event(const TrajectoryFrame& frame, double tau, double chi) {
  if (frame.inertial()) return {tau, chi, tau, chi};
  const double a = frame.acceleration();
  const double c = frame.c();
  const double arm = c * c / a + chi;
  if (!(arm > 0.0)) {
    std::ostringstream msg;
    msg << "chi = " << chi << " is at or beyond the horizon at " << -c * c / a;
    throw HorizonCrossing(msg.str());
  }
  const double eta = a * tau / c;
  return {tau, chi, (arm / c) * std::sinh(eta), arm * std::cosh(eta)};
}

FourVector dreibein(const TrajectoryFrame& frame, double tau) {
  const double eta = frame.acceleration() * tau / frame.c();
  return {std::sinh(eta), std::cosh(eta), 0.0, 0.0};
}

FourVector four_velocity(const TrajectoryFrame& frame, double tau) {
  const double eta = frame.acceleration() * tau / frame.c();
  return {std::cosh(eta), std::sinh(eta), 0.0, 0.0};
}

double chirp_factor(const TrajectoryFrame& frame, double k, double tau) {
  if (frame.inertial()) return k;
  const double s = k > 0.0 ? 1.0 : -1.0;
  return k * std::exp(-s * frame.acceleration() * tau / frame.c());
}

double phase(const TrajectoryFrame& frame, double k, double tau, double chi) {
  if (k == 0.0) throw ZeroWavenumber();
  const auto ev = fw_event(frame, tau, chi);
  return k * ev.x - frame.c() * std::abs(k) * ev.t;
}

double centre_phase(const TrajectoryFrame& frame, double k, double tau) {
  const double c = frame.c();
  if (frame.inertial()) return -c * std::abs(k) * tau;
  const double a = frame.acceleration();
  const double s = k > 0.0 ? 1.0 : -1.0;
  // (c^2/a) k (exp(-s a tau / c) - 1), written with expm1 for small a tau.
  return (c * c / a) * k * std::expm1(-s * a * tau / c);
}

double resonance_frequency(const TrajectoryFrame& frame, double gap, double tau) {
  if (frame.inertial()) return gap;
  return gap * std::exp(frame.acceleration() * tau / frame.c());
}

}  // namespace udw
