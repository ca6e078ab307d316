// Copyright 2026 The graphcode Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Formatting helpers shared by the report writers. Internal to the library.

#ifndef GRAPHCODE_SRC_REPORT_UTIL_HPP
#define GRAPHCODE_SRC_REPORT_UTIL_HPP

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "graphcode/kernel.hpp"

namespace graphcode::report {

/// Rounds to 12 significant digits and folds -0 into 0, so reports are stable
/// across platforms that differ in the last ulp.
double clean(double v);
/// clean(v) printed with %.12g.
std::string num(double v);

nlohmann::json matrix_json(const Matrix& m);

class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);
  void add(std::vector<std::string> row);
  std::string str() const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

struct Bar {
  std::string label;
  double value;
  /// Optional second value drawn as a thin marker (e.g. the sampled estimate).
  std::optional<double> marker;
};

std::string svg_bars(const std::string& title, const std::vector<Bar>& bars, double lo, double hi);

struct Series {
  std::string name;
  std::string colour;
  std::vector<std::pair<double, double>> points;
  bool joined = false;
};

std::string svg_scatter(const std::string& title, const std::string& xlabel, const std::string& ylabel,
                        const std::vector<Series>& series, double xlo, double xhi, double ylo, double yhi);

/// Rows x columns of +1 / -1 cells.
std::string svg_sign_grid(const std::string& title, const std::vector<std::string>& row_labels,
                          const std::vector<std::string>& col_labels, const std::vector<std::vector<int>>& signs);

}  // namespace graphcode::report

#endif  // GRAPHCODE_SRC_REPORT_UTIL_HPP
