#pragma once

// CSV and SVG output for sweep rows, curves and grids.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "oltsp/experiment.hpp"

namespace oltsp {

inline constexpr double kScaleMin = 1.0;
inline constexpr double kScaleMax = 3.0;

inline std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline double parse_num(const std::string& s) {
  if (s == "nan" || s.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::size_t used = 0;
  const double v = std::stod(s, &used);
  if (used != s.size()) throw ValidationError("bad number '" + s + "'");
  return v;
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

inline constexpr std::string_view kRowHeader = "instance,algorithm,variant,eta_target,eta,delta,final_label,n,opt,makespan,ratio";

inline std::string rows_csv(const std::vector<SweepRow>& rows) {
  std::string out = std::string(kRowHeader) + "\n";
  for (const SweepRow& r : rows) {
    out += std::to_string(r.instance) + ',' + std::string(to_string(r.algorithm)) + ',' + std::string(to_string(r.variant)) +
           ',' + fmt(r.eta_target) + ',' + fmt(r.eta) + ',' + (r.delta ? fmt(*r.delta) : "") + ',' +
           (r.final_label ? std::to_string(*r.final_label) : "") + ',' + std::to_string(r.n) + ',' + fmt(r.opt) + ',' +
           fmt(r.makespan) + ',' + fmt(r.ratio) + '\n';
  }
  return out;
}

inline std::vector<SweepRow> parse_rows_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kRowHeader) throw ValidationError("not a sweep rows CSV");
  std::vector<SweepRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto c = split_csv_line(line);
    if (c.size() != 11) throw ValidationError("malformed sweep row: " + line);
    SweepRow r;
    r.instance = std::stoul(c[0]);
    r.algorithm = parse_algorithm(c[1]);
    r.variant = parse_variant(c[2]);
    r.eta_target = parse_num(c[3]);
    r.eta = parse_num(c[4]);
    if (!c[5].empty()) r.delta = parse_num(c[5]);
    if (!c[6].empty()) r.final_label = std::stoi(c[6]);
    r.n = std::stoul(c[7]);
    r.opt = parse_num(c[8]);
    r.makespan = parse_num(c[9]);
    r.ratio = parse_num(c[10]);
    rows.push_back(r);
  }
  return rows;
}

inline std::string curve_csv(const std::vector<CurvePoint>& curve, const std::string& x_name = "eta") {
  std::string out = x_name + ",max_ratio\n";
  for (const auto& p : curve) out += fmt(p.x) + ',' + fmt(p.value) + '\n';
  return out;
}

/// One line per cell: row key, column key, value.
inline std::string grid_csv(const Grid& g) {
  std::string out = g.row_name + ',' + g.col_name + ",ratio\n";
  for (std::size_t i = 0; i < g.rows.size(); ++i) {
    for (std::size_t j = 0; j < g.cols.size(); ++j) out += fmt(g.rows[i]) + ',' + fmt(g.cols[j]) + ',' + fmt(g.values[i][j]) + '\n';
  }
  return out;
}

inline Grid parse_grid_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ValidationError("empty grid CSV");
  auto head = split_csv_line(line);
  if (head.size() != 3) throw ValidationError("malformed grid header");
  Grid g{head[0], head[1], {}, {}, {}};
  std::vector<std::array<double, 3>> cells;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto c = split_csv_line(line);
    if (c.size() != 3) throw ValidationError("malformed grid row: " + line);
    cells.push_back({parse_num(c[0]), parse_num(c[1]), parse_num(c[2])});
  }
  for (const auto& c : cells) {
    if (std::find(g.rows.begin(), g.rows.end(), c[0]) == g.rows.end()) g.rows.push_back(c[0]);
    if (std::find(g.cols.begin(), g.cols.end(), c[1]) == g.cols.end()) g.cols.push_back(c[1]);
  }
  g.values.assign(g.rows.size(), std::vector<double>(g.cols.size(), std::numeric_limits<double>::quiet_NaN()));
  for (const auto& c : cells) {
    auto i = std::find(g.rows.begin(), g.rows.end(), c[0]) - g.rows.begin();
    auto j = std::find(g.cols.begin(), g.cols.end(), c[1]) - g.cols.begin();
    g.values[i][j] = c[2];
  }
  return g;
}

/// Fill color for a ratio on the fixed [1, 3] scale, pale yellow to dark red.
inline std::string ratio_color(double v) {
  if (std::isnan(v)) return "#dddddd";
  const double u = (std::clamp(v, kScaleMin, kScaleMax) - kScaleMin) / (kScaleMax - kScaleMin);
  auto lerp = [u](int a, int b) { return static_cast<int>(std::lround(a + (b - a) * u)); };
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", lerp(0xff, 0x80), lerp(0xf5, 0x00), lerp(0xc0, 0x26));
  return buf;
}

inline std::string grid_svg(const Grid& g, const std::string& title = "") {
  const int cell = 24, left = 60, top = 40;
  const int w = left + cell * static_cast<int>(g.cols.size()) + 20;
  const int h = top + cell * static_cast<int>(g.rows.size()) + 40;
  std::ostringstream s;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h << "\">\n";
  s << "<text x=\"" << left << "\" y=\"20\" font-size=\"14\">" << title << "</text>\n";
  for (std::size_t i = 0; i < g.rows.size(); ++i) {
    for (std::size_t j = 0; j < g.cols.size(); ++j) {
      // First grid row drawn at the bottom.
      const int x = left + cell * static_cast<int>(j);
      const int y = top + cell * static_cast<int>(g.rows.size() - 1 - i);
      s << "<rect x=\"" << x << "\" y=\"" << y << "\" width=\"" << cell << "\" height=\"" << cell << "\" fill=\""
        << ratio_color(g.values[i][j]) << "\"><title>" << g.row_name << "=" << fmt(g.rows[i]) << " " << g.col_name << "="
        << fmt(g.cols[j]) << " ratio=" << fmt(g.values[i][j]) << "</title></rect>\n";
    }
  }
  s << "<text x=\"" << left << "\" y=\"" << h - 12 << "\" font-size=\"12\">" << g.col_name << " (x), " << g.row_name
    << " (y); color scale " << kScaleMin << " to " << kScaleMax << "</text>\n";
  s << "</svg>\n";
  return s.str();
}

inline std::string curve_svg(const std::vector<CurvePoint>& curve, const std::string& title = "") {
  const double w = 480, h = 300, pad = 40;
  double xmax = 0.0;
  for (const auto& p : curve) xmax = std::max(xmax, p.x);
  if (xmax == 0.0) xmax = 1.0;
  auto px = [&](double x) { return pad + (w - 2 * pad) * x / xmax; };
  auto py = [&](double v) { return h - pad - (h - 2 * pad) * (std::clamp(v, kScaleMin, kScaleMax) - kScaleMin) / (kScaleMax - kScaleMin); };
  std::ostringstream s;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h << "\">\n";
  s << "<text x=\"" << pad << "\" y=\"20\" font-size=\"14\">" << title << "</text>\n";
  s << "<rect x=\"" << pad << "\" y=\"" << pad << "\" width=\"" << w - 2 * pad << "\" height=\"" << h - 2 * pad
    << "\" fill=\"none\" stroke=\"#888\"/>\n";
  s << "<polyline fill=\"none\" stroke=\"#b00026\" stroke-width=\"2\" points=\"";
  for (const auto& p : curve) {
    if (!std::isnan(p.value)) s << px(p.x) << ',' << py(p.value) << ' ';
  }
  s << "\"/>\n";
  s << "<text x=\"" << pad << "\" y=\"" << h - 10 << "\" font-size=\"12\">x: 0 to " << xmax << ", y: ratio " << kScaleMin
    << " to " << kScaleMax << "</text>\n";
  s << "</svg>\n";
  return s.str();
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path + " for writing");
  out << content;
  if (!out) throw Error("write failed: " + path);
}

}  // namespace oltsp
