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

#include "report_util.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

namespace graphcode::report {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 400.0;
constexpr double kMargin = 60.0;

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '&':
        out += "&amp;";
        break;
      default:
        out += c;
    }
  }
  return out;
}

std::string header(const std::string& title) {
  std::ostringstream s;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
    << "\" font-family=\"sans-serif\" font-size=\"11\">\n"
    << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
    << "<text x=\"" << kWidth / 2 << "\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">" << escape(title)
    << "</text>\n";
  return s.str();
}

}  // namespace

double clean(double v) {
  if (!std::isfinite(v)) return v;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  const double r = std::strtod(buf, nullptr);
  return r == 0.0 ? 0.0 : r;
}

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", clean(v));
  return buf;
}

nlohmann::json matrix_json(const Matrix& m) {
  nlohmann::json re = nlohmann::json::array(), im = nlohmann::json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    nlohmann::json rr = nlohmann::json::array(), ii = nlohmann::json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      rr.push_back(clean(m(r, c).real()));
      ii.push_back(clean(m(r, c).imag()));
    }
    re.push_back(rr);
    im.push_back(ii);
  }
  return {{"re", re}, {"im", im}};
}

CsvTable::CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

void CsvTable::add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }

std::string CsvTable::str() const {
  std::ostringstream out;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      const bool quote = cells[i].find_first_of(",\"") != std::string::npos;
      if (i) out << ',';
      if (quote) {
        out << '"';
        for (char c : cells[i]) out << (c == '"' ? "\"\"" : std::string(1, c));
        out << '"';
      } else {
        out << cells[i];
      }
    }
    out << '\n';
  };
  line(header_);
  for (const auto& r : rows_) line(r);
  return out.str();
}

std::string svg_bars(const std::string& title, const std::vector<Bar>& bars, double lo, double hi) {
  std::ostringstream s;
  s << header(title);
  const double plot_h = kHeight - 2 * kMargin;
  const double plot_w = kWidth - 2 * kMargin;
  auto y_of = [&](double v) { return kMargin + (hi - std::clamp(v, lo, hi)) / (hi - lo) * plot_h; };
  const double y0 = y_of(0.0);
  s << "<line x1=\"" << kMargin << "\" y1=\"" << num(y0) << "\" x2=\"" << kWidth - kMargin << "\" y2=\"" << num(y0)
    << "\" stroke=\"black\"/>\n";
  for (double t : {lo, 0.5 * (lo + hi), hi}) {
    s << "<text x=\"" << kMargin - 6 << "\" y=\"" << num(y_of(t) + 4) << "\" text-anchor=\"end\">" << num(t)
      << "</text>\n";
  }
  const double slot = bars.empty() ? plot_w : plot_w / static_cast<double>(bars.size());
  for (std::size_t i = 0; i < bars.size(); ++i) {
    const double x = kMargin + slot * static_cast<double>(i) + slot * 0.15;
    const double w = slot * 0.7;
    const double y = y_of(bars[i].value);
    s << "<rect x=\"" << num(x) << "\" y=\"" << num(std::min(y, y0)) << "\" width=\"" << num(w) << "\" height=\""
      << num(std::abs(y - y0)) << "\" fill=\"" << (bars[i].value >= 0 ? "#4a7ab5" : "#c4553b") << "\"/>\n";
    if (bars[i].marker) {
      const double ym = y_of(*bars[i].marker);
      s << "<line x1=\"" << num(x) << "\" y1=\"" << num(ym) << "\" x2=\"" << num(x + w) << "\" y2=\"" << num(ym)
        << "\" stroke=\"black\" stroke-width=\"2\"/>\n";
    }
    s << "<text x=\"" << num(x + w / 2) << "\" y=\"" << num(kHeight - kMargin + 14) << "\" text-anchor=\"middle\" "
      << "transform=\"rotate(30 " << num(x + w / 2) << " " << num(kHeight - kMargin + 14) << ")\">"
      << escape(bars[i].label) << "</text>\n";
  }
  s << "</svg>\n";
  return s.str();
}

std::string svg_scatter(const std::string& title, const std::string& xlabel, const std::string& ylabel,
                        const std::vector<Series>& series, double xlo, double xhi, double ylo, double yhi) {
  std::ostringstream s;
  s << header(title);
  const double plot_h = kHeight - 2 * kMargin;
  const double plot_w = kWidth - 2 * kMargin;
  auto px = [&](double x) { return kMargin + (x - xlo) / (xhi - xlo) * plot_w; };
  auto py = [&](double y) { return kMargin + (yhi - y) / (yhi - ylo) * plot_h; };
  s << "<rect x=\"" << kMargin << "\" y=\"" << kMargin << "\" width=\"" << plot_w << "\" height=\"" << plot_h
    << "\" fill=\"none\" stroke=\"black\"/>\n";
  s << "<text x=\"" << kWidth / 2 << "\" y=\"" << kHeight - 20 << "\" text-anchor=\"middle\">" << escape(xlabel)
    << "</text>\n";
  s << "<text x=\"16\" y=\"" << kHeight / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 " << kHeight / 2
    << ")\">" << escape(ylabel) << "</text>\n";
  s << "<text x=\"" << kMargin << "\" y=\"" << kHeight - kMargin + 14 << "\" text-anchor=\"middle\">" << num(xlo)
    << "</text><text x=\"" << kWidth - kMargin << "\" y=\"" << kHeight - kMargin + 14 << "\" text-anchor=\"middle\">"
    << num(xhi) << "</text>\n";
  s << "<text x=\"" << kMargin - 6 << "\" y=\"" << kHeight - kMargin << "\" text-anchor=\"end\">" << num(ylo)
    << "</text><text x=\"" << kMargin - 6 << "\" y=\"" << kMargin + 4 << "\" text-anchor=\"end\">" << num(yhi)
    << "</text>\n";
  if (ylo < 0.0 && yhi > 0.0) {
    s << "<line x1=\"" << kMargin << "\" y1=\"" << num(py(0)) << "\" x2=\"" << kWidth - kMargin << "\" y2=\""
      << num(py(0)) << "\" stroke=\"#999\" stroke-dasharray=\"4 3\"/>\n";
  }
  double legend_y = kMargin + 12;
  for (const auto& ser : series) {
    if (ser.joined && ser.points.size() > 1) {
      s << "<polyline fill=\"none\" stroke=\"" << ser.colour << "\" points=\"";
      for (const auto& [x, y] : ser.points) s << num(px(x)) << "," << num(py(y)) << " ";
      s << "\"/>\n";
    }
    for (const auto& [x, y] : ser.points) {
      s << "<circle cx=\"" << num(px(x)) << "\" cy=\"" << num(py(y)) << "\" r=\"3\" fill=\"" << ser.colour
        << "\"/>\n";
    }
    s << "<text x=\"" << kWidth - kMargin - 4 << "\" y=\"" << num(legend_y) << "\" text-anchor=\"end\" fill=\""
      << ser.colour << "\">" << escape(ser.name) << "</text>\n";
    legend_y += 14;
  }
  s << "</svg>\n";
  return s.str();
}

std::string svg_sign_grid(const std::string& title, const std::vector<std::string>& row_labels,
                          const std::vector<std::string>& col_labels, const std::vector<std::vector<int>>& signs) {
  std::ostringstream s;
  const double cell = 18.0;
  const double left = 90.0, top = 50.0;
  const double w = left + cell * static_cast<double>(col_labels.size()) + 20;
  const double h = top + cell * static_cast<double>(row_labels.size()) + 20;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(w) << "\" height=\"" << num(h)
    << "\" font-family=\"sans-serif\" font-size=\"10\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
    << "<text x=\"8\" y=\"16\" font-size=\"13\">" << escape(title) << "</text>\n";
  for (std::size_t c = 0; c < col_labels.size(); ++c) {
    s << "<text x=\"" << num(left + cell * (c + 0.5)) << "\" y=\"" << num(top - 6) << "\" text-anchor=\"middle\">"
      << escape(col_labels[c]) << "</text>\n";
  }
  for (std::size_t r = 0; r < row_labels.size(); ++r) {
    s << "<text x=\"" << num(left - 6) << "\" y=\"" << num(top + cell * (r + 0.7)) << "\" text-anchor=\"end\">"
      << escape(row_labels[r]) << "</text>\n";
    for (std::size_t c = 0; c < col_labels.size(); ++c) {
      const int v = signs.at(r).at(c);
      s << "<rect x=\"" << num(left + cell * c) << "\" y=\"" << num(top + cell * r) << "\" width=\"" << cell - 1
        << "\" height=\"" << cell - 1 << "\" fill=\"" << (v > 0 ? "#4a7ab5" : "#c4553b") << "\"/>\n";
    }
  }
  s << "</svg>\n";
  return s.str();
}

}  // namespace graphcode::report
