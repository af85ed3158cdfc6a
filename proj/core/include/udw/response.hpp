// Copyright 2026 The udw Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "udw/kinematics.hpp"
#include "udw/profiles.hpp"
#include "udw/quadrature.hpp"

namespace udw {

class ThreadPool;

/// Spectral amplitude y(k) of the one-particle signal state
/// |y> = int dk y(k) a_k^dagger |0>, unit norm, supported on one side of k = 0.
class WavepacketSpectrum {
 public:
  using Amplitude = std::function<Complex(double)>;

  /// With `normalize` the amplitude is rescaled to unit norm on [k_lo, k_hi];
  /// otherwise its norm must already be 1 within 1e-8 (InvalidPacket if not).
  WavepacketSpectrum(Amplitude amplitude, double k_lo, double k_hi, bool normalize = true);

  /// Real Gaussian amplitude whose |y|^2 has mean `center` and standard
  /// deviation `width`, truncated at `span` widths and clipped at k = 0.
  static WavepacketSpectrum gaussian(double center, double width, double span = 10.0);

  Complex operator()(double k) const;
  double k_lo() const noexcept { return k_lo_; }
  double k_hi() const noexcept { return k_hi_; }
  bool is_real() const noexcept { return real_; }

 private:
  Amplitude amplitude_;
  double k_lo_;
  double k_hi_;
  double scale_ = 1.0;
  bool real_ = true;
};

/// Band of |k| integrated for both signs of k. The 1/|k| mode measure of a
/// massless field in one dimension needs k_min > 0.
struct KDomain {
  double k_min = 0.0;
  double k_max = 0.0;
};

/// [1e-3 gap/c, gap/c + 12/L]; k_max = 40 gap/c for a pointlike profile.
KDomain default_k_domain(double gap, const SpatialProfile& profile, double c = 1.0);

struct DetectorConfig {
  double gap = 1.0;
  double coupling = 1.0;
  SpatialProfile profile = SpatialProfile::delta();
  TrajectoryFrame frame;
  double tau_start = 0.0;
  double tau_end = 1.0;
  std::optional<KDomain> cutoffs;

  /// Throws std::invalid_argument / HorizonCrossing on inconsistent input.
  void validate() const;
  KDomain k_domain() const;
};

/// Error control for the response computations.
struct ResponseNumerics {
  /// Wavenumber integrals.
  quad::QuadratureSpec k_spec = default_k_spec();
  /// Proper-time double integral.
  quad::QuadratureSpec tau_spec = default_tau_spec();
  ThreadPool* pool = nullptr;

  static quad::QuadratureSpec default_k_spec();
  static quad::QuadratureSpec default_tau_spec();
};

/// G^{+-}(k, tau) = F^(+-L(k, tau)). Throws ZeroWavenumber for k == 0.
Complex G_pm(const SpectralProfile& spectrum, int sign, double k, double tau,
             const TrajectoryFrame& frame);
Complex G_pm(const SpatialProfile& profile, int sign, double k, double tau,
             const TrajectoryFrame& frame);

/// The two pieces of W_y: the packet cross terms and the |y|^2-weighted
/// vacuum-like term.
struct KernelTerms {
  Complex packet{};
  Complex vacuum{};
  Complex total() const { return packet + vacuum; }
};

/// W_y(tau', tau'') = <y| Psi(tau'') Psi(tau') |y> from the three-term
/// wavenumber representation. The k and kappa integrals of the packet terms
/// separate, so each is a product of two adaptive 1-D integrals.
/// Throws QuadratureFailure with the worst panel when an integral misses
/// its tolerance.
KernelTerms correlation_terms(const WavepacketSpectrum& y, const DetectorConfig& config,
                              double tau_prime, double tau_dprime,
                              const ResponseNumerics& numerics = {});

Complex correlation_general(const WavepacketSpectrum& y, const DetectorConfig& config,
                            double tau_prime, double tau_dprime,
                            const ResponseNumerics& numerics = {});

/// Cosine form valid for an even spectral profile and a real packet; the
/// packet part is integrated as a genuine 2-D (k, kappa) integral.
/// Throws PreconditionViolated when either condition fails.
KernelTerms correlation_symmetric_terms(const WavepacketSpectrum& y, const DetectorConfig& config,
                                        double tau_prime, double tau_dprime,
                                        const ResponseNumerics& numerics = {});

Complex correlation_symmetric(const WavepacketSpectrum& y, const DetectorConfig& config,
                              double tau_prime, double tau_dprime,
                              const ResponseNumerics& numerics = {});

enum class KernelVariant { General, CosSimplified };

struct CorrelationKernel {
  std::function<Complex(double, double)> evaluator;
  KernelVariant variant = KernelVariant::General;

  Complex operator()(double tau_prime, double tau_dprime) const {
    return evaluator(tau_prime, tau_dprime);
  }
};

CorrelationKernel make_correlation_kernel(const WavepacketSpectrum& y, const DetectorConfig& config,
                                          KernelVariant variant,
                                          const ResponseNumerics& numerics = {});

struct ProbabilityBreakdown {
  double vacuum_term = 0.0;
  double packet_term = 0.0;
  double vacuum_error = 0.0;
  double packet_error = 0.0;
};

struct ProbabilityResult {
  double value = 0.0;
  double quadrature_error = 0.0;
  std::size_t evaluations = 0;
  ProbabilityBreakdown breakdown;
  KDomain cutoffs;
  /// Same probability with the infrared cutoff moved to 2 k_min.
  double value_at_double_kmin = 0.0;
};

/// First-order excitation probability
///   P = |g|^2 int int dtau' dtau'' exp(i gap (tau' - tau'')) W_y(tau', tau'')
/// over the switching window, by the adaptive 2-D engine. Both rotating and
/// counter-rotating content is kept.
/// Throws QuadratureFailure, or NegativeBeyondTolerance if P < -5 error.
ProbabilityResult excitation_probability(const WavepacketSpectrum& y,
                                         const DetectorConfig& config,
                                         const ResponseNumerics& numerics = {});

struct SpectralPoint {
  double carrier = 0.0;
  ProbabilityResult result;
};

/// Excitation probability for a real Gaussian packet (|y|^2 standard
/// deviation packet_width / c) centred on carrier / c, for each carrier.
/// A negative carrier selects a left-moving packet. The vacuum-like term
/// does not depend on the packet and is computed once.
std::vector<SpectralPoint> spectral_response(const DetectorConfig& config,
                                             std::span<const double> carriers,
                                             double packet_width,
                                             const ResponseNumerics& numerics = {});

}  // namespace udw
