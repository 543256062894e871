#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "biortho/measures.hpp"

namespace biortho {

/// Piecewise-constant density: bar k spans [edges[k], edges[k+1]].
struct Histogram {
  std::vector<double> edges;
  std::vector<double> heights;
};

/// Normalised histogram of sample points over [lo, hi] with equal-width bins.
/// Points outside the range are rejected.
Histogram density_histogram(std::span<const double> points, int bins, double lo, double hi);
/// Over the observed range of the points.
Histogram density_histogram(std::span<const double> points, int bins);
/// Cell k of the grid measure becomes a bar of height w_k / h_k; bar edges sit
/// midway between nodes (mirrored at the two ends).
Histogram grid_histogram(const GridMeasure& m);
double histogram_area(const Histogram& h);

struct Curve {
  std::vector<double> x;
  std::vector<double> y;
};

Curve sample_curve(const std::function<double(double)>& f, double lo, double hi, int points);

struct PlotOptions {
  std::string title;
  std::string x_label = "x";
  std::string y_label = "density";
  int width = 640;
  int height = 420;
  std::optional<double> y_max;  // clip height; automatic when absent
};

/// Standalone SVG with axes, at most one histogram series drawn as a single
/// path, and an optional overlay curve drawn as a single path. Output is a
/// deterministic function of the inputs. Throws DomainError when both series
/// are absent or empty.
std::string emit_svg(const std::optional<Histogram>& histogram, const std::optional<Curve>& curve,
                     const PlotOptions& options = {});

}  // namespace biortho
