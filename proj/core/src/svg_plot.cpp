#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "sbr/harness.hpp"

namespace sbr {

namespace {

struct Series {
  std::string name;
  std::vector<double> x, y, band;  // band = 2 std
};

Series read_aggregate(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("emit_plot: cannot open " + path);
  Series s;
  s.name = std::filesystem::path(path).stem().string();
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("emit_plot: empty file " + path);
  int row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    std::vector<std::string> cells;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (cells.size() < 3)
      throw std::runtime_error("emit_plot: malformed row " + std::to_string(row) + " in " + path);
    try {
      s.x.push_back(std::stod(cells[0]));
      s.y.push_back(std::stod(cells[1]));
      s.band.push_back(std::stod(cells[2]));
    } catch (const std::exception&) {
      throw std::runtime_error("emit_plot: non-numeric cell in row " + std::to_string(row) +
                               " of " + path);
    }
  }
  if (s.x.empty()) throw std::runtime_error("emit_plot: no data rows in " + path);
  return s;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return std::string(buf);
}

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return std::string(buf);
}

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"};

}  // namespace

void emit_plot(const std::vector<std::string>& aggregate_csvs, const std::string& out_path,
               const PlotOptions& opts) {
  if (aggregate_csvs.empty())
    throw std::invalid_argument("emit_plot: at least one aggregate CSV is required");

  std::vector<Series> series;
  series.reserve(aggregate_csvs.size());
  for (const auto& p : aggregate_csvs) series.push_back(read_aggregate(p));

  const double W = 800, H = 500, ML = 80, MR = 30, MT = 30, MB = 60;
  double xmin = series[0].x.front(), xmax = xmin;
  double ymin = 0, ymax = 0;
  bool first = true;
  for (const auto& s : series)
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      double lo = s.y[i] - s.band[i], hi = s.y[i] + s.band[i];
      if (opts.log_y) {
        if (s.y[i] <= 0) continue;
        lo = std::max(lo, s.y[i] * 1e-3);
        lo = std::log10(lo);
        hi = std::log10(hi);
      }
      if (first) {
        xmin = xmax = s.x[i];
        ymin = lo;
        ymax = hi;
        first = false;
      } else {
        xmin = std::min(xmin, s.x[i]);
        xmax = std::max(xmax, s.x[i]);
        ymin = std::min(ymin, lo);
        ymax = std::max(ymax, hi);
      }
    }
  if (xmax == xmin) xmax = xmin + 1;
  if (ymax == ymin) ymax = ymin + 1;

  auto px = [&](double x) { return ML + (x - xmin) / (xmax - xmin) * (W - ML - MR); };
  auto py = [&](double yv) {
    const double v = opts.log_y ? std::log10(std::max(yv, std::pow(10.0, ymin))) : yv;
    return H - MB - (v - ymin) / (ymax - ymin) * (H - MT - MB);
  };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
      << "\" viewBox=\"0 0 " << W << " " << H << "\">\n";
  svg << "<rect width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n";
  // axes
  svg << "<line x1=\"" << num(ML) << "\" y1=\"" << num(H - MB) << "\" x2=\"" << num(W - MR)
      << "\" y2=\"" << num(H - MB) << "\" stroke=\"black\"/>\n";
  svg << "<line x1=\"" << num(ML) << "\" y1=\"" << num(MT) << "\" x2=\"" << num(ML) << "\" y2=\""
      << num(H - MB) << "\" stroke=\"black\"/>\n";
  // ticks
  for (int i = 0; i <= 5; ++i) {
    const double x = xmin + (xmax - xmin) * i / 5.0;
    svg << "<line x1=\"" << num(px(x)) << "\" y1=\"" << num(H - MB) << "\" x2=\"" << num(px(x))
        << "\" y2=\"" << num(H - MB + 5) << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << num(px(x)) << "\" y=\"" << num(H - MB + 20)
        << "\" font-size=\"11\" text-anchor=\"middle\">" << sci(x) << "</text>\n";
    const double yv = ymin + (ymax - ymin) * i / 5.0;
    const double ylabel = opts.log_y ? std::pow(10.0, yv) : yv;
    const double ypix = H - MB - (yv - ymin) / (ymax - ymin) * (H - MT - MB);
    svg << "<line x1=\"" << num(ML - 5) << "\" y1=\"" << num(ypix) << "\" x2=\"" << num(ML)
        << "\" y2=\"" << num(ypix) << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << num(ML - 8) << "\" y=\"" << num(ypix + 4)
        << "\" font-size=\"11\" text-anchor=\"end\">" << sci(ylabel) << "</text>\n";
  }
  svg << "<text x=\"" << num((ML + W - MR) / 2) << "\" y=\"" << num(H - 15)
      << "\" font-size=\"13\" text-anchor=\"middle\">observed examples</text>\n";
  svg << "<text x=\"18\" y=\"" << num((MT + H - MB) / 2)
      << "\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
      << num((MT + H - MB) / 2) << ")\">test MSE</text>\n";

  for (std::size_t si = 0; si < series.size(); ++si) {
    const auto& s = series[si];
    const char* color = kPalette[si % (sizeof(kPalette) / sizeof(kPalette[0]))];
    // +/- 2 std whiskers
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      const double lo = s.y[i] - s.band[i], hi = s.y[i] + s.band[i];
      svg << "<line x1=\"" << num(px(s.x[i])) << "\" y1=\"" << num(py(std::max(lo, 0.0)))
          << "\" x2=\"" << num(px(s.x[i])) << "\" y2=\"" << num(py(hi)) << "\" stroke=\"" << color
          << "\" stroke-width=\"1\" opacity=\"0.6\"/>\n";
    }
    svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.8\" points=\"";
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (i) svg << ' ';
      svg << num(px(s.x[i])) << ',' << num(py(s.y[i]));
    }
    svg << "\"/>\n";
    // legend
    const double ly = MT + 18.0 * static_cast<double>(si);
    svg << "<line x1=\"" << num(W - MR - 150) << "\" y1=\"" << num(ly) << "\" x2=\""
        << num(W - MR - 120) << "\" y2=\"" << num(ly) << "\" stroke=\"" << color
        << "\" stroke-width=\"2\"/>\n";
    svg << "<text x=\"" << num(W - MR - 114) << "\" y=\"" << num(ly + 4)
        << "\" font-size=\"12\">" << s.name << "</text>\n";
  }
  svg << "</svg>\n";

  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw std::runtime_error("emit_plot: cannot write " + out_path);
  out << svg.str();
}

}  // namespace sbr
