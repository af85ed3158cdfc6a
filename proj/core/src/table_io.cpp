// Copyright 2026 The udw Authors
// SPDX-License-Identifier: Apache-2.0
#include "udw/table_io.hpp"

#include <fstream>
#include <sstream>

#include "udw/errors.hpp"

namespace udw {

ComplexTable parse_complex_table(std::istream& in, const std::string& source) {
  ComplexTable table;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream row(line);
    std::vector<double> cols;
    double v;
    while (row >> v) cols.push_back(v);
    if (!row.eof()) {
      throw Error(source + ":" + std::to_string(lineno) + ": non-numeric column");
    }
    if (cols.empty()) continue;
    if (cols.size() < 2 || cols.size() > 3) {
      throw Error(source + ":" + std::to_string(lineno) + ": expected 2 or 3 columns, got " +
                  std::to_string(cols.size()));
    }
    table.x.push_back(cols[0]);
    table.values.emplace_back(cols[1], cols.size() == 3 ? cols[2] : 0.0);
  }
  return table;
}

ComplexTable read_complex_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  return parse_complex_table(in, path);
}

}  // namespace udw
