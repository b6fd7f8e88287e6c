#include "svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "pseudospec/error.hpp"
#include "pseudospec/operators.hpp"

namespace pseudospec::cli {

namespace {

constexpr double kWidth = 720.0;
constexpr double kHeight = 480.0;
constexpr double kMargin = 48.0;
constexpr std::size_t kMaxPoints = 400;

const char* const kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

}  // namespace

void write_svg_plot(const std::string& path, const DerivedParams& d, const Superpotential& sp,
                    const GridSpec& g, const std::vector<LevelRecord>& levels) {
  const std::size_t stride = std::max<std::size_t>(1, g.n_interior / kMaxPoints);
  std::vector<double> xs, vs;
  for (std::size_t i = 0; i < g.n_interior; i += stride) {
    xs.push_back(g.node(i));
    vs.push_back(potential_v(d, sp, g.node(i)));
  }

  double y_lo = *std::min_element(vs.begin(), vs.end());
  double y_hi = y_lo + 1.0;
  for (const auto& l : levels) {
    y_lo = std::min(y_lo, l.eps);
    y_hi = std::max(y_hi, l.eps);
  }
  const double span = y_hi - y_lo;
  const double amplitude = 0.4 * span / std::max<std::size_t>(levels.size(), 1);
  y_lo -= 0.1 * span;
  y_hi += 0.25 * span;

  auto px = [&](double x) { return kMargin + (x - g.x_min) / (g.x_max - g.x_min) * (kWidth - 2 * kMargin); };
  auto py = [&](double y) {
    const double t = (std::clamp(y, y_lo, y_hi) - y_lo) / (y_hi - y_lo);
    return kHeight - kMargin - t * (kHeight - 2 * kMargin);
  };
  auto polyline = [&](const std::vector<double>& ys, const char* color, double width) {
    std::ostringstream os;
    os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"" << width << "\" points=\"";
    for (std::size_t i = 0; i < xs.size(); ++i) os << num(px(xs[i])) << "," << num(py(ys[i])) << " ";
    os << "\"/>\n";
    return os.str();
  };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<line x1=\"" << kMargin << "\" y1=\"" << kHeight - kMargin << "\" x2=\"" << kWidth - kMargin
      << "\" y2=\"" << kHeight - kMargin << "\" stroke=\"black\"/>\n";
  svg << "<line x1=\"" << kMargin << "\" y1=\"" << kMargin << "\" x2=\"" << kMargin << "\" y2=\""
      << kHeight - kMargin << "\" stroke=\"black\"/>\n";
  svg << "<text x=\"" << kMargin << "\" y=\"" << kMargin - 16 << "\" font-family=\"sans-serif\" font-size=\"14\">"
      << to_string(d.family) << ": V(x) and phi_n at eps_n</text>\n";
  svg << "<text x=\"" << kMargin << "\" y=\"" << kHeight - 16 << "\" font-family=\"sans-serif\" font-size=\"12\">x in ["
      << num(g.x_min) << ", " << num(g.x_max) << "]</text>\n";
  svg << polyline(vs, "black", 2.0);

  for (std::size_t k = 0; k < levels.size(); ++k) {
    const LevelRecord& l = levels[k];
    const WavefunctionSampler phi(d, l.n, Picture::hermitian);
    std::vector<double> ys;
    double peak = 0.0;
    for (double x : xs) {
      ys.push_back(phi(x));
      peak = std::max(peak, std::abs(ys.back()));
    }
    for (double& y : ys) y = l.eps + (peak > 0.0 ? amplitude * y / peak : 0.0);
    const char* color = kColors[k % (sizeof kColors / sizeof kColors[0])];
    svg << "<line x1=\"" << kMargin << "\" y1=\"" << num(py(l.eps)) << "\" x2=\"" << kWidth - kMargin
        << "\" y2=\"" << num(py(l.eps)) << "\" stroke=\"" << color << "\" stroke-dasharray=\"4 4\"/>\n";
    svg << polyline(ys, color, 1.5);
    svg << "<text x=\"" << kWidth - kMargin + 4 << "\" y=\"" << num(py(l.eps)) << "\" font-family=\"sans-serif\" font-size=\"11\">n="
        << l.n << "</text>\n";
  }
  svg << "</svg>\n";

  std::ofstream f(path);
  if (!f) throw Error(ErrorCode::invalid_argument, "cannot open plot file '" + path + "'");
  f << svg.str();
}

}  // namespace pseudospec::cli
