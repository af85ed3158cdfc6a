// Copyright 2026 The udw Authors
// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "udw/errors.hpp"
#include "udw/kinematics.hpp"

namespace {

using udw::TrajectoryFrame;

TEST(Frame, HorizonConditionAtConstruction) {
  EXPECT_NO_THROW(TrajectoryFrame(0.1, 1.0, 9.9));
  EXPECT_THROW(TrajectoryFrame(0.1, 1.0, 10.0), udw::HorizonCrossing);
  EXPECT_THROW(TrajectoryFrame(-1.0), std::exception);
  const TrajectoryFrame inertial;
  EXPECT_TRUE(inertial.inertial());
  EXPECT_TRUE(std::isinf(inertial.horizon_distance()));
  EXPECT_NO_THROW(inertial.check_extent(1e9));
  const TrajectoryFrame f(2.0, 3.0);
  EXPECT_DOUBLE_EQ(f.horizon_distance(), 4.5);
  EXPECT_THROW(f.check_extent(4.5), udw::HorizonCrossing);
}

TEST(FwEvent, RestInstant) {
  const TrajectoryFrame f(0.5, 1.0);
  const auto e = udw::fw_event(f, 0.0, 0.3);
  EXPECT_EQ(e.t, 0.0);
  EXPECT_DOUBLE_EQ(e.x, 2.0 + 0.3);
}

TEST(FwEvent, UnitAcceleration) {
  const auto e = udw::fw_event(TrajectoryFrame(1.0, 1.0), 1.0, 0.0);
  EXPECT_NEAR(e.t, std::sinh(1.0), 1e-15);
  EXPECT_NEAR(e.x, std::cosh(1.0), 1e-15);
  EXPECT_NEAR(e.x * e.x - e.t * e.t, 1.0, 1e-14);
}

TEST(FwEvent, ReproducesCoordinateMap) {
  for (double a : {0.01, 0.3, 2.0}) {
    for (double c : {1.0, 3.0}) {
      const TrajectoryFrame f(a, c);
      for (double tau : {-2.0, 0.0, 0.7, 3.0}) {
        for (double chi : {-0.9 * c * c / a, 0.0, 1.5}) {
          const auto e = udw::fw_event(f, tau, chi);
          const double t = (c / a + chi / c) * std::sinh(a * tau / c);
          const double x = (c * c / a + chi) * std::cosh(a * tau / c);
          EXPECT_NEAR(e.t, t, 1e-12 * std::max(1.0, std::abs(t)));
          EXPECT_NEAR(e.x, x, 1e-12 * std::max(1.0, std::abs(x)));
        }
      }
    }
  }
}

TEST(FwEvent, InertialBranch) {
  const auto e = udw::fw_event(TrajectoryFrame(), 1.25, -4.0);
  EXPECT_EQ(e.t, 1.25);
  EXPECT_EQ(e.x, -4.0);
}

TEST(FwEvent, TinyAccelerationCentreWorldline) {
  const auto e = udw::fw_event(TrajectoryFrame(1e-9, 1.0), 1.0, 0.0);
  EXPECT_NEAR(e.t, 1.0, 1e-12);
  EXPECT_NEAR(e.x / 1e9, 1.0, 1e-12);
}

TEST(FwEvent, RejectsBeyondHorizon) {
  const TrajectoryFrame f(1.0, 1.0);
  EXPECT_THROW(udw::fw_event(f, 0.0, -1.0), udw::HorizonCrossing);
  EXPECT_THROW(udw::fw_event(f, 0.0, -2.0), udw::HorizonCrossing);
}

TEST(FwEvent, HyperbolicWorldline) {
  for (double a : {0.05, 1.0, 4.0}) {
    const double c = 2.0;
    const TrajectoryFrame f(a, c);
    for (double tau = -3.0; tau <= 3.0; tau += 0.25) {
      const auto e = udw::fw_event(f, tau, 0.0);
      const double r = c * c / a;
      EXPECT_NEAR((e.x * e.x - c * c * e.t * e.t) / (r * r), 1.0, 1e-10);
    }
  }
}

TEST(FwEvent, Rigidity) {
  const TrajectoryFrame f(0.8, 1.0);
  for (double d : {0.1, 0.5, 1.0}) {
    for (double tau = -2.0; tau <= 2.0; tau += 0.5) {
      const auto p0 = udw::fw_event(f, tau, 0.0);
      const auto p1 = udw::fw_event(f, tau, d);
      const udw::FourVector sep{p1.t - p0.t, p1.x - p0.x, 0, 0};
      EXPECT_NEAR(std::sqrt(-udw::minkowski_dot(sep, sep)), d, 1e-10);
      // The separation lies in the momentary rest frame of the centre.
      EXPECT_NEAR(udw::minkowski_dot(sep, udw::four_velocity(f, tau)), 0.0, 1e-10);
    }
  }
}

TEST(FwEvent, InertialContinuityIsFirstOrder) {
  const double tau = 1.5, chi = 0.7;
  const auto ref = udw::fw_event(TrajectoryFrame(), tau, chi);
  double prev = 0.0;
  for (double eps : {1e-2, 1e-3, 1e-4, 1e-5}) {
    const TrajectoryFrame f(eps, 1.0);
    const auto e = udw::fw_event(f, tau, chi);
    const double dt = std::abs(e.t - ref.t);
    EXPECT_NEAR(e.x - f.horizon_distance(), ref.x, 5 * eps);
    if (prev > 0.0) EXPECT_NEAR(prev / dt, 10.0, 0.2);
    prev = dt;
  }
}

TEST(Dreibein, RestFrameAndNorm) {
  const TrajectoryFrame f(0.6, 1.0);
  const auto e0 = udw::dreibein(f, 0.0);
  EXPECT_EQ(e0[0], 0.0);
  EXPECT_EQ(e0[1], 1.0);
  for (double tau = -4.0; tau <= 4.0; tau += 0.5) {
    const auto e = udw::dreibein(f, tau);
    const auto u = udw::four_velocity(f, tau);
    EXPECT_NEAR(udw::minkowski_dot(e, e), -1.0, 1e-12 * std::cosh(0.6 * tau) * std::cosh(0.6 * tau));
    EXPECT_NEAR(udw::minkowski_dot(u, u), 1.0, 1e-12 * std::cosh(0.6 * tau) * std::cosh(0.6 * tau));
    EXPECT_NEAR(udw::minkowski_dot(e, u), 0.0, 1e-12 * std::cosh(0.6 * tau) * std::cosh(0.6 * tau));
  }
}

TEST(Phase, FactorizationOnGrid) {
  for (double a : {0.1, 1.0}) {
    const double c = 1.0;
    const TrajectoryFrame f(a, c);
    for (int i = 0; i < 10; ++i) {
      const double k = -3.0 + 6.0 * (i + 0.5) / 10.0;
      for (int j = 0; j < 10; ++j) {
        const double tau = -1.0 + 0.25 * j;
        for (int l = 0; l < 10; ++l) {
          const double chi = -0.5 * c * c / a + l * 0.1;
          const double phi = udw::phase(f, k, tau, chi);
          const double fact = udw::chirp_factor(f, k, tau) * (chi + c * c / a);
          EXPECT_LT(std::abs(phi - fact), 1e-10 * std::max(1.0, std::abs(fact)));
        }
      }
    }
  }
}

TEST(Phase, ChirpSigns) {
  const TrajectoryFrame f(0.5, 2.0);
  EXPECT_EQ(udw::chirp_factor(f, 1.3, 0.0), 1.3);
  EXPECT_DOUBLE_EQ(udw::chirp_factor(f, 1.3, 1.0), 1.3 * std::exp(-0.25));
  EXPECT_DOUBLE_EQ(udw::chirp_factor(f, -1.3, 1.0), -1.3 * std::exp(0.25));
  EXPECT_NEAR(udw::phase(f, 0.4, 0.0, 0.3), 0.4 * (0.3 + 8.0), 1e-13);
  EXPECT_THROW(udw::phase(f, 0.0, 0.0, 0.0), udw::ZeroWavenumber);
}

TEST(Phase, CentrePhaseInertialLimit) {
  const TrajectoryFrame inertial;
  EXPECT_EQ(udw::centre_phase(inertial, 2.0, 3.0), -6.0);
  EXPECT_EQ(udw::centre_phase(inertial, -2.0, 3.0), -6.0);
  const TrajectoryFrame tiny(1e-8, 1.0);
  EXPECT_NEAR(udw::centre_phase(tiny, 2.0, 3.0), -6.0, 1e-6);
  // Re-centred phase is the centre-point phase minus its tau = 0 value.
  const TrajectoryFrame f(0.7, 1.0);
  for (double k : {-1.5, 0.8}) {
    const double expect = udw::phase(f, k, 1.2, 0.0) - udw::phase(f, k, 0.0, 0.0);
    EXPECT_NEAR(udw::centre_phase(f, k, 1.2), expect, 1e-12);
  }
}

TEST(Resonance, Examples) {
  EXPECT_EQ(udw::resonance_frequency(TrajectoryFrame(0.3), 1.7, 0.0), 1.7);
  EXPECT_EQ(udw::resonance_frequency(TrajectoryFrame(), 1.7, 5.0), 1.7);
  const double w = udw::resonance_frequency(TrajectoryFrame(1.0, 1.0), 1.0, std::log(2.0));
  EXPECT_NEAR(w, 2.0, 4 * std::numeric_limits<double>::epsilon());
}

}  // namespace
