// Copyright 2026 The udw Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace udw {
class ThreadPool;
}

namespace udw::quad {

using Complex = std::complex<double>;

/// Upper bound on |d(phase)/dx| over [lo, hi]; used to size initial panels.
using PhaseHint = std::function<double(double lo, double hi)>;

/// Error-control contract shared by the 1-D and 2-D engines.
struct QuadratureSpec {
  double rel_tol = 1e-10;
  double abs_tol = 1e-300;
  std::size_t max_panels = 20000;
  PhaseHint phase_hint;

  /// Throws std::invalid_argument unless tolerances > 0 and max_panels >= 4.
  void validate() const;
};

/// Phase hint for a constant bound `rate`.
PhaseHint constant_phase_rate(double rate);

struct PanelDiagnostics {
  double lo = 0.0;
  double hi = 0.0;
  double error = 0.0;
};

struct IntegrationResult {
  Complex value{};
  double error_estimate = 0.0;
  std::size_t evaluations = 0;
  bool converged = false;
  std::size_t panels = 0;
  PanelDiagnostics worst_panel;  // x-range only for 2-D results
};

/// A weighted node set: sum_i weights[i] * f(nodes[i]) approximates an integral.
struct Rule {
  std::vector<double> nodes;
  std::vector<double> weights;
  std::size_t size() const noexcept { return nodes.size(); }
};

using Integrand1D = std::function<Complex(double)>;
using Integrand2D = std::function<Complex(double, double)>;

/// Fills out[i * ys.size() + j] = f(xs[i], ys[j]).
using TensorIntegrand =
    std::function<void(std::span<const double> xs, std::span<const double> ys,
                       std::span<Complex> out)>;

TensorIntegrand pointwise(Integrand2D f);

/// Adaptive Gauss-Kronrod (G7/K15) integration on [a, b].
///
/// Panels are bisected largest-error-first until the summed error estimate
/// meets max(rel_tol*|I|, abs_tol) or max_panels is reached, in which case
/// the best estimate comes back with converged == false.
IntegrationResult integrate_1d(const Integrand1D& f, double a, double b,
                               const QuadratureSpec& spec);

/// Same, starting from the panels delimited by `breakpoints` (sorted,
/// at least two entries). Useful when the integrand has known kinks.
IntegrationResult integrate_1d(const Integrand1D& f,
                               std::span<const double> breakpoints,
                               const QuadratureSpec& spec);

/// Runs the 1-D adaptive scheme and returns the final K15 node set, so the
/// same resolution can be reused for a family of related integrands.
Rule adaptive_rule_1d(const Integrand1D& f, std::span<const double> breakpoints,
                      const QuadratureSpec& spec, IntegrationResult* result = nullptr);

enum class Symmetry {
  None,
  /// Caller certifies f(x, y) == conj(f(y, x)); only x <= y is sampled.
  Hermitian,
};

/// Adaptive tensor-product G7/K15 integration over the square [lo, hi]^2.
///
/// Refinement proceeds in rounds. Each round splits the set of regions that
/// carry the larger half of the error, evaluates the children (on `pool`
/// when given) and re-sums in region order, so results are bit-identical
/// for any worker count.
IntegrationResult integrate_2d(const TensorIntegrand& f, double lo, double hi,
                               const QuadratureSpec& spec,
                               Symmetry symmetry = Symmetry::None,
                               ThreadPool* pool = nullptr);

IntegrationResult integrate_2d(const Integrand2D& f, double lo, double hi,
                               const QuadratureSpec& spec,
                               Symmetry symmetry = Symmetry::None,
                               ThreadPool* pool = nullptr);

/// Midpoint rule with n cells. Deliberately naive; used to cross-check.
Complex oracle_riemann(const Integrand1D& f, std::size_t n, double a, double b);

/// Midpoint rule on an n x n grid over [lo, hi]^2.
Complex oracle_riemann(const Integrand2D& f, std::size_t n, double lo, double hi);

}  // namespace udw::quad
