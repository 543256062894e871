#include "biortho/svg.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "biortho/error.hpp"

namespace biortho {
namespace {

constexpr double kMarginLeft = 64.0;
constexpr double kMarginRight = 20.0;
constexpr double kMarginTop = 36.0;
constexpr double kMarginBottom = 48.0;
constexpr int kTicks = 5;

std::string escape(const std::string& s) {
  std::string out;
  for (char ch : s) {
    switch (ch) {
      case '&':
        out += "&amp;";
        break;
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '"':
        out += "&quot;";
        break;
      default:
        out += ch;
    }
  }
  return out;
}

struct Frame {
  double x_lo, x_hi, y_hi;
  double left, right, top, bottom;

  double px(double x) const { return left + (x - x_lo) / (x_hi - x_lo) * (right - left); }
  double py(double y) const { return bottom - std::clamp(y, 0.0, y_hi) / y_hi * (bottom - top); }
};

}  // namespace

Histogram density_histogram(std::span<const double> points, int bins, double lo, double hi) {
  if (points.empty()) throw DomainError("density_histogram: no points");
  if (bins < 1) throw DomainError("density_histogram: bins must be positive");
  if (!(hi > lo)) throw DomainError("density_histogram: need hi > lo");
  Histogram h;
  h.edges.resize(static_cast<std::size_t>(bins) + 1);
  for (int k = 0; k <= bins; ++k) h.edges[static_cast<std::size_t>(k)] = lo + (hi - lo) * k / bins;
  h.edges.back() = hi;
  std::vector<double> counts(static_cast<std::size_t>(bins), 0.0);
  for (double x : points) {
    if (!(x >= lo && x <= hi)) throw DomainError("density_histogram: point outside the range");
    auto k = static_cast<std::size_t>((x - lo) / (hi - lo) * bins);
    counts[std::min(k, counts.size() - 1)] += 1.0;
  }
  const double n = static_cast<double>(points.size());
  h.heights.resize(counts.size());
  for (std::size_t k = 0; k < counts.size(); ++k) h.heights[k] = counts[k] / (n * (h.edges[k + 1] - h.edges[k]));
  return h;
}

Histogram density_histogram(std::span<const double> points, int bins) {
  if (points.empty()) throw DomainError("density_histogram: no points");
  const auto [mn, mx] = std::minmax_element(points.begin(), points.end());
  double lo = *mn;
  double hi = *mx;
  if (!(hi > lo)) {
    lo -= 0.5;
    hi += 0.5;
  }
  return density_histogram(points, bins, lo, hi);
}

Histogram grid_histogram(const GridMeasure& m) {
  const auto x = m.nodes();
  const auto w = m.weights();
  const auto width = m.widths();
  const std::size_t n = m.size();
  Histogram h;
  h.edges.resize(n + 1);
  h.edges[0] = x[0] - 0.5 * width[0];
  for (std::size_t i = 1; i < n; ++i) h.edges[i] = 0.5 * (x[i - 1] + x[i]);
  h.edges[n] = x[n - 1] + 0.5 * width[n - 1];
  h.heights.resize(n);
  for (std::size_t i = 0; i < n; ++i) h.heights[i] = w[i] / (h.edges[i + 1] - h.edges[i]);
  return h;
}

double histogram_area(const Histogram& h) {
  double area = 0.0;
  for (std::size_t k = 0; k < h.heights.size(); ++k) area += h.heights[k] * (h.edges[k + 1] - h.edges[k]);
  return area;
}

Curve sample_curve(const std::function<double(double)>& f, double lo, double hi, int points) {
  if (points < 2) throw DomainError("sample_curve: need at least two points");
  if (!(hi > lo)) throw DomainError("sample_curve: need hi > lo");
  Curve c;
  c.x.resize(static_cast<std::size_t>(points));
  c.y.resize(c.x.size());
  for (int k = 0; k < points; ++k) {
    const double x = lo + (hi - lo) * k / (points - 1);
    c.x[static_cast<std::size_t>(k)] = x;
    c.y[static_cast<std::size_t>(k)] = f(x);
  }
  return c;
}

std::string emit_svg(const std::optional<Histogram>& histogram, const std::optional<Curve>& curve,
                     const PlotOptions& options) {
  const bool has_hist = histogram && !histogram->heights.empty();
  const bool has_curve = curve && !curve->x.empty();
  if (!has_hist && !has_curve) throw DomainError("emit_svg: no data");
  if (has_hist && histogram->edges.size() != histogram->heights.size() + 1) {
    throw DomainError("emit_svg: histogram edges and heights do not match");
  }
  if (has_curve && curve->x.size() != curve->y.size()) throw DomainError("emit_svg: curve x and y differ in length");

  double x_lo = std::numeric_limits<double>::infinity();
  double x_hi = -x_lo;
  double y_hi = 0.0;
  if (has_hist) {
    x_lo = std::min(x_lo, histogram->edges.front());
    x_hi = std::max(x_hi, histogram->edges.back());
    for (double v : histogram->heights) y_hi = std::max(y_hi, v);
  }
  if (has_curve) {
    for (std::size_t i = 0; i < curve->x.size(); ++i) {
      x_lo = std::min(x_lo, curve->x[i]);
      x_hi = std::max(x_hi, curve->x[i]);
      if (std::isfinite(curve->y[i])) y_hi = std::max(y_hi, curve->y[i]);
    }
  }
  if (!(x_hi > x_lo)) x_hi = x_lo + 1.0;
  y_hi = options.y_max ? *options.y_max : 1.05 * y_hi;
  if (!(y_hi > 0.0)) y_hi = 1.0;

  const Frame f{x_lo, x_hi, y_hi, kMarginLeft, options.width - kMarginRight, kMarginTop,
                options.height - kMarginBottom};

  std::string s;
  s += fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{1}\" viewBox=\"0 0 {0} {1}\">\n",
      options.width, options.height);
  s += fmt::format("<rect width=\"{}\" height=\"{}\" fill=\"white\"/>\n", options.width, options.height);
  if (!options.title.empty()) {
    s += fmt::format("<text x=\"{:.2f}\" y=\"22\" text-anchor=\"middle\" font-family=\"sans-serif\" "
                     "font-size=\"14\">{}</text>\n",
                     0.5 * options.width, escape(options.title));
  }

  // Axes and ticks.
  s += fmt::format("<line x1=\"{0:.2f}\" y1=\"{1:.2f}\" x2=\"{2:.2f}\" y2=\"{1:.2f}\" stroke=\"black\"/>\n", f.left,
                   f.bottom, f.right);
  s += fmt::format("<line x1=\"{0:.2f}\" y1=\"{1:.2f}\" x2=\"{0:.2f}\" y2=\"{2:.2f}\" stroke=\"black\"/>\n", f.left,
                   f.bottom, f.top);
  for (int k = 0; k <= kTicks; ++k) {
    const double xv = x_lo + (x_hi - x_lo) * k / kTicks;
    const double yv = y_hi * k / kTicks;
    s += fmt::format("<line x1=\"{0:.2f}\" y1=\"{1:.2f}\" x2=\"{0:.2f}\" y2=\"{2:.2f}\" stroke=\"black\"/>\n",
                     f.px(xv), f.bottom, f.bottom + 5.0);
    s += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"middle\" font-family=\"sans-serif\" "
                     "font-size=\"11\">{:.3g}</text>\n",
                     f.px(xv), f.bottom + 18.0, xv);
    s += fmt::format("<line x1=\"{0:.2f}\" y1=\"{1:.2f}\" x2=\"{2:.2f}\" y2=\"{1:.2f}\" stroke=\"black\"/>\n",
                     f.left - 5.0, f.py(yv), f.left);
    s += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"end\" font-family=\"sans-serif\" "
                     "font-size=\"11\">{:.3g}</text>\n",
                     f.left - 8.0, f.py(yv) + 4.0, yv);
  }
  s += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"middle\" font-family=\"sans-serif\" "
                   "font-size=\"12\">{}</text>\n",
                   0.5 * (f.left + f.right), options.height - 10.0, escape(options.x_label));
  s += fmt::format("<text x=\"14\" y=\"{0:.2f}\" transform=\"rotate(-90 14 {0:.2f})\" text-anchor=\"middle\" "
                   "font-family=\"sans-serif\" font-size=\"12\">{1}</text>\n",
                   0.5 * (f.top + f.bottom), escape(options.y_label));

  if (has_hist) {
    const auto& e = histogram->edges;
    const auto& h = histogram->heights;
    std::string d = fmt::format("M{:.2f},{:.2f}", f.px(e[0]), f.py(0.0));
    for (std::size_t k = 0; k < h.size(); ++k) {
      d += fmt::format(" L{:.2f},{:.2f} L{:.2f},{:.2f}", f.px(e[k]), f.py(h[k]), f.px(e[k + 1]), f.py(h[k]));
    }
    d += fmt::format(" L{:.2f},{:.2f} Z", f.px(e.back()), f.py(0.0));
    s += fmt::format("<path class=\"histogram\" d=\"{}\" fill=\"#9ecae1\" stroke=\"#3182bd\" stroke-width=\"0.8\"/>\n",
                     d);
  }
  if (has_curve) {
    std::string d;
    bool pen_down = false;
    for (std::size_t i = 0; i < curve->x.size(); ++i) {
      if (!std::isfinite(curve->y[i])) {
        pen_down = false;
        continue;
      }
      d += fmt::format("{}{}{:.2f},{:.2f}", d.empty() ? "" : " ", pen_down ? 'L' : 'M', f.px(curve->x[i]),
                       f.py(curve->y[i]));
      pen_down = true;
    }
    s += fmt::format("<path class=\"curve\" d=\"{}\" fill=\"none\" stroke=\"#de2d26\" stroke-width=\"1.5\"/>\n", d);
  }
  s += "</svg>\n";
  return s;
}

}  // namespace biortho
