// Copyright 2026 The udw Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <iosfwd>
#include <string>
#include <vector>

namespace udw {

/// Two or three whitespace-separated columns: x, Re[v] and optionally Im[v].
struct ComplexTable {
  std::vector<double> x;
  std::vector<std::complex<double>> values;
};

/// '#' starts a comment; blank lines are skipped. Throws udw::Error naming
/// the source and line on malformed rows.
ComplexTable parse_complex_table(std::istream& in, const std::string& source);
ComplexTable read_complex_table(const std::string& path);

}  // namespace udw
