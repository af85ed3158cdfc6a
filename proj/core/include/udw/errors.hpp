// Copyright 2026 The udw Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace udw {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// profiles
class DeltaNotEvaluable : public Error {
 public:
  DeltaNotEvaluable();
};
class DeltaNotModulable : public Error {
 public:
  DeltaNotModulable();
};
class NestedModulation : public Error {
 public:
  NestedModulation();
};
class InvalidProfile : public Error {
 public:
  using Error::Error;
};

// quadrature and everything that integrates
class QuadratureFailure : public Error {
 public:
  using Error::Error;
};

// qed_bridge
class GridMismatch : public Error {
 public:
  using Error::Error;
};
class InvalidWavefunction : public Error {
 public:
  using Error::Error;
};
class IRCutoffRequired : public Error {
 public:
  using Error::Error;
};
class ZeroMomentum : public Error {
 public:
  ZeroMomentum();
};

// kinematics
class HorizonCrossing : public Error {
 public:
  using Error::Error;
};
class ZeroWavenumber : public Error {
 public:
  ZeroWavenumber();
};

// response
class PreconditionViolated : public Error {
 public:
  using Error::Error;
};
class NegativeBeyondTolerance : public Error {
 public:
  using Error::Error;
};
class InvalidPacket : public Error {
 public:
  using Error::Error;
};

/// Configuration error; `field()` names the offending key as `section.key`.
class ConfigError : public Error {
 public:
  ConfigError(std::string field, const std::string& message);
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

}  // namespace udw
