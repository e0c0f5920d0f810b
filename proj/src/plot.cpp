#include "schiffer/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

namespace schiffer {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double log_spaced(double lo, double hi, int i, int count) {
  if (count <= 1) return lo;
  return lo * std::pow(hi / lo, static_cast<double>(i) / (count - 1));
}

struct Box {
  double x0 = 0, x1 = 0, y0 = 0, y1 = 0;
};

Box bounds(const PlotData& d) {
  Box b{1e300, -1e300, 1e300, -1e300};
  auto add = [&](const std::vector<Complex>& curve) {
    for (const auto& z : curve) {
      b.x0 = std::min(b.x0, z.real());
      b.x1 = std::max(b.x1, z.real());
      b.y0 = std::min(b.y0, z.imag());
      b.y1 = std::max(b.y1, z.imag());
    }
  };
  for (const auto& c : d.rays) add(c);
  for (const auto& c : d.circles) add(c);
  add(d.unit_image);
  const double span = std::max(b.x1 - b.x0, b.y1 - b.y0);
  const double cx = 0.5 * (b.x0 + b.x1), cy = 0.5 * (b.y0 + b.y1);
  const double half = 0.55 * span;
  return {cx - half, cx + half, cy - half, cy + half};
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  // Avoid "-0.000".
  if (std::string(buf) == "-0.000") return "0.000";
  return buf;
}

}  // namespace

PlotData plot_curves(const SlitMapSpec& spec, const PlotOptions& o) {
  validate(spec);
  if (o.rays < 1 || o.circles < 1 || o.samples < 2 || !(o.r_min >= 1.0) || !(o.r_max > o.r_min)) {
    throw ContractError("plot options need rays, circles >= 1, samples >= 2 and 1 <= r_min < r_max");
  }
  PlotData d;
  d.title = describe(spec);
  for (int k = 0; k < o.rays; ++k) {
    const double angle = kTwoPi * k / o.rays;
    std::vector<Complex> curve;
    for (int j = 0; j < o.samples; ++j) {
      curve.push_back(slit_eval(spec, std::polar(log_spaced(o.r_min, o.r_max, j, o.samples), angle)));
    }
    d.rays.push_back(std::move(curve));
  }
  for (int i = 0; i < o.circles; ++i) {
    const double r = log_spaced(o.r_min, o.r_max, i, o.circles);
    std::vector<Complex> curve;
    for (int j = 0; j <= o.samples; ++j) curve.push_back(slit_eval(spec, std::polar(r, kTwoPi * j / o.samples)));
    d.circles.push_back(std::move(curve));
  }
  for (int j = 0; j < o.samples; ++j) d.unit_image.push_back(slit_eval(spec, std::polar(1.0, kTwoPi * j / o.samples)));
  return d;
}

std::string render_svg(const PlotData& d, int pixels) {
  const Box b = bounds(d);
  const double scale = pixels / (b.x1 - b.x0);
  auto px = [&](Complex z) { return fmt((z.real() - b.x0) * scale) + "," + fmt((b.y1 - z.imag()) * scale); };
  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << pixels << "\" height=\"" << pixels
     << "\" viewBox=\"0 0 " << pixels << " " << pixels << "\">\n"
     << "<title>" << d.title << "</title>\n"
     << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  auto polyline = [&](const std::vector<Complex>& curve, const char* colour, const char* width, bool closed) {
    os << "<" << (closed ? "polygon" : "polyline") << " fill=\"none\" stroke=\"" << colour << "\" stroke-width=\""
       << width << "\" points=\"";
    for (std::size_t i = 0; i < curve.size(); ++i) os << (i ? " " : "") << px(curve[i]);
    os << "\"/>\n";
  };
  for (const auto& c : d.rays) polyline(c, "#7f7f7f", "0.8", false);
  for (const auto& c : d.circles) polyline(c, "#1f4e9c", "0.8", false);
  polyline(d.unit_image, "black", "1.6", true);
  os << "</svg>\n";
  return os.str();
}

std::string render_pgm(const PlotData& d, int pixels) {
  const Box b = bounds(d);
  const double scale = (pixels - 1) / (b.x1 - b.x0);
  std::vector<unsigned char> img(static_cast<std::size_t>(pixels) * static_cast<std::size_t>(pixels), 255);
  auto to_px = [&](Complex z) {
    return std::pair<long, long>{std::lround((z.real() - b.x0) * scale), std::lround((b.y1 - z.imag()) * scale)};
  };
  auto plot = [&](long x, long y, unsigned char v) {
    if (x >= 0 && y >= 0 && x < pixels && y < pixels) {
      auto& p = img[static_cast<std::size_t>(y) * static_cast<std::size_t>(pixels) + static_cast<std::size_t>(x)];
      p = std::min(p, v);
    }
  };
  auto line = [&](Complex a, Complex c, unsigned char v) {
    auto [x0, y0] = to_px(a);
    auto [x1, y1] = to_px(c);
    const long dx = std::labs(x1 - x0), dy = -std::labs(y1 - y0);
    const long sx = x0 < x1 ? 1 : -1, sy = y0 < y1 ? 1 : -1;
    long err = dx + dy;
    while (true) {
      plot(x0, y0, v);
      if (x0 == x1 && y0 == y1) break;
      const long e2 = 2 * err;
      if (e2 >= dy) {
        err += dy;
        x0 += sx;
      }
      if (e2 <= dx) {
        err += dx;
        y0 += sy;
      }
    }
  };
  auto draw = [&](const std::vector<Complex>& curve, unsigned char v, bool closed) {
    for (std::size_t i = 1; i < curve.size(); ++i) line(curve[i - 1], curve[i], v);
    if (closed && curve.size() > 1) line(curve.back(), curve.front(), v);
  };
  for (const auto& c : d.rays) draw(c, 160, false);
  for (const auto& c : d.circles) draw(c, 100, false);
  draw(d.unit_image, 0, true);
  std::string out = "P5\n" + std::to_string(pixels) + " " + std::to_string(pixels) + "\n255\n";
  out.append(img.begin(), img.end());
  return out;
}

std::string render(const PlotData& data, PlotFormat format, int pixels) {
  return format == PlotFormat::Svg ? render_svg(data, pixels) : render_pgm(data, pixels);
}

double roots_of_unity_residual(const PlotData& d, int n) {
  const auto samples = static_cast<int>(d.unit_image.size());
  if (n < 1 || samples % n != 0) throw ContractError("unit-circle samples must be a multiple of n");
  double worst = 0.0;
  for (int k = 0; k < n; ++k) worst = std::max(worst, std::abs(d.unit_image[static_cast<std::size_t>(k * samples / n)]));
  return worst;
}

double reflection_residual(const SlitMapSpec& spec, const PlotOptions& o) {
  double worst = 0.0;
  auto check = [&](Complex z) {
    const Complex f = slit_eval(spec, z);
    worst = std::max(worst, std::abs(slit_eval(spec, std::conj(z)) - std::conj(f)));
    worst = std::max(worst, std::abs(slit_eval(spec, -std::conj(z)) + std::conj(f)));
  };
  for (int i = 0; i < o.circles; ++i) {
    const double r = log_spaced(o.r_min, o.r_max, i, o.circles);
    for (int j = 0; j < o.samples; ++j) check(std::polar(r, kTwoPi * j / o.samples));
  }
  for (int k = 0; k < o.rays; ++k) {
    for (int j = 0; j < o.samples; ++j) {
      check(std::polar(log_spaced(o.r_min, o.r_max, j, o.samples), kTwoPi * k / o.rays));
    }
  }
  for (int j = 0; j < o.samples; ++j) check(std::polar(1.0, kTwoPi * j / o.samples));
  return worst;
}

}  // namespace schiffer
