// Copyright 2026 The udw Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "udw/quadrature.hpp"

namespace udw {

using Complex = std::complex<double>;

enum class ProfileKind { Delta, Gaussian, Lorentzian, Modulated, Tabulated };

std::string to_string(ProfileKind kind);

/// Spatial smearing F(x) of a detector.
///
/// Gaussian and Lorentzian shapes carry unit spatial integral. A modulated
/// profile is S(x - x0) cos(q (x - x0)) for an envelope S centred at x0; it
/// keeps the envelope's normalisation, so its own integral is below one.
/// Instances are immutable and cheap to copy.
class SpatialProfile {
 public:
  enum class Normalization {
    /// Real non-negative tables are rescaled to unit integral.
    Auto,
    AsGiven,
  };

  static SpatialProfile delta(double center = 0.0);
  static SpatialProfile gaussian(double width, double center = 0.0);
  static SpatialProfile lorentzian(double width, double center = 0.0);
  /// Interpolated table. `x` strictly increasing, |F| at both ends at most
  /// 1e-12 max|F|. Coordinates are relative to `center`.
  static SpatialProfile tabulated(std::vector<double> x, std::vector<Complex> values,
                                  Normalization normalization = Normalization::Auto,
                                  double center = 0.0);

  ProfileKind kind() const noexcept;
  double center() const noexcept;
  /// Width L of a Gaussian or Lorentzian (of the envelope for Modulated).
  double width() const;
  /// Carrier wavenumber q = gap / c of a modulated profile.
  double carrier() const;
  const SpatialProfile& envelope() const;
  const std::vector<double>& grid() const;
  const std::vector<Complex>& table() const;

  bool is_real() const noexcept;
  /// F(x) == F(-x), hence the transform is even in k.
  bool is_even() const;
  /// Length scale for default wavenumber cutoffs; 0 for Delta.
  double characteristic_length() const;
  /// Largest |x| where |F(x)| may exceed 1e-12 max|F|.
  double extent() const;
  /// Interval that numeric transforms integrate over explicitly.
  std::pair<double, double> core_support() const;

  /// Pointwise value. Throws DeltaNotEvaluable for Delta.
  Complex operator()(double x) const;

  struct Data;

 private:
  explicit SpatialProfile(std::shared_ptr<const Data> data);
  friend SpatialProfile modulate(const SpatialProfile&, double, double);

  std::shared_ptr<const Data> data_;
};

/// Same as profile(x).
Complex eval_spatial(const SpatialProfile& profile, double x);

/// Multiplies `envelope` by cos(gap x / c). Throws NestedModulation or
/// DeltaNotModulable.
SpatialProfile modulate(const SpatialProfile& envelope, double gap, double c = 1.0);

enum class SpectralProvenance { Analytic, Numeric };

/// Fourier transform F^(k) = int F(x) exp(-i k x) dx, no 2 pi prefactor.
class SpectralProfile {
 public:
  using Evaluator = std::function<Complex(double)>;

  SpectralProfile(Evaluator evaluator, SpectralProvenance provenance,
                  quad::QuadratureSpec spec = {});

  Complex operator()(double k) const { return (*eval_)(k); }
  SpectralProvenance provenance() const noexcept { return provenance_; }
  /// Quadrature settings behind a Numeric evaluator.
  const quad::QuadratureSpec& quadrature() const noexcept { return spec_; }

 private:
  std::shared_ptr<const Evaluator> eval_;
  SpectralProvenance provenance_;
  quad::QuadratureSpec spec_;
};

/// Default error control for numeric transforms.
quad::QuadratureSpec transform_spec();

/// Closed forms where available, numeric quadrature for tables. Numeric
/// evaluations throw QuadratureFailure when the requested accuracy is missed.
SpectralProfile spectral(const SpatialProfile& profile,
                         const quad::QuadratureSpec& spec = transform_spec());

/// Always integrates F(x) exp(-ikx) numerically (algebraic tails of a
/// Lorentzian handled by a double-exponential Fourier rule). Not for Delta.
SpectralProfile numeric_spectral(const SpatialProfile& profile,
                                 const quad::QuadratureSpec& spec = transform_spec());

/// Cubic B-spline resampling of `spectrum` on n uniform points of
/// [k_lo, k_hi]; zero outside. For repeated evaluation of numeric transforms.
SpectralProfile resample(const SpectralProfile& spectrum, double k_lo, double k_hi,
                         std::size_t n);

/// Loads a tabulated profile from whitespace-separated columns
/// `x Re[F] [Im[F]]`; '#' starts a comment.
SpatialProfile load_tabulated_profile(const std::string& path,
                                      SpatialProfile::Normalization normalization =
                                          SpatialProfile::Normalization::Auto);

}  // namespace udw
