// Copyright 2026 The udw Authors
// SPDX-License-Identifier: Apache-2.0
#include "udw/errors.hpp"

#include <utility>

namespace udw {

DeltaNotEvaluable::DeltaNotEvaluable()
    : Error("a delta profile is a distribution and cannot be evaluated pointwise") {}

DeltaNotModulable::DeltaNotModulable()
    : Error("a delta profile cannot be used as a modulation envelope") {}

NestedModulation::NestedModulation()
    : Error("the envelope of a modulated profile must not itself be modulated") {}

ZeroMomentum::ZeroMomentum() : Error("mode momentum p must be non-zero") {}

ZeroWavenumber::ZeroWavenumber() : Error("wavenumber k must be non-zero") {}

ConfigError::ConfigError(std::string field, const std::string& message)
    : Error(field + ": " + message), field_(std::move(field)) {}

}  // namespace udw
