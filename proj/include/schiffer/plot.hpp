#pragma once

#include <string>
#include <vector>

#include "schiffer/slitmaps.hpp"

namespace schiffer {

enum class PlotFormat { Svg, Pgm };

struct PlotOptions {
  int rays = 12;
  int circles = 12;
  int samples = 720;
  double r_min = 1.001;
  double r_max = 3.0;
  int pixels = 600;
};

/// Images of a polar grid on |z| > 1 and of the unit circle.
struct PlotData {
  std::string title;
  std::vector<std::vector<Complex>> rays;
  std::vector<std::vector<Complex>> circles;
  /// Image of e^{2 pi i j / samples}, j = 0..samples-1.
  std::vector<Complex> unit_image;
};

PlotData plot_curves(const SlitMapSpec& spec, const PlotOptions& options = {});

/// Deterministic renderings: identical data gives byte-identical output.
std::string render_svg(const PlotData& data, int pixels = 600);
std::string render_pgm(const PlotData& data, int pixels = 600);
std::string render(const PlotData& data, PlotFormat format, int pixels = 600);

/// Largest |f(z)| over unit-circle samples whose angle is a multiple of 2 pi / n.
double roots_of_unity_residual(const PlotData& data, int n);

/// Largest deviation from f(conj z) = conj f(z) and f(-conj z) = -conj f(z)
/// over the grid.
double reflection_residual(const SlitMapSpec& spec, const PlotOptions& options = {});

}  // namespace schiffer
