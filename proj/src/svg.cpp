// Copyright 2026 The orbital-ssp authors.
// SPDX-License-Identifier: MIT

#include "svg.hpp"

#include <fmt/format.h>

#include "orbital_ssp/ndp.hpp"

namespace orbital_ssp::cli {

namespace {

constexpr double kWidth = 960, kHeight = 640, kMargin = 40;

struct Frame {
  double xmax, ymax;
  double px(const BigInt& x) const { return kMargin + x.convert_to<double>() / xmax * (kWidth - 2 * kMargin); }
  double py(const BigInt& y) const {
    return kHeight - kMargin - y.convert_to<double>() / ymax * (kHeight - 2 * kMargin);
  }
};

void polyline(std::ostream& os, const Frame& f, const std::vector<Point<BigInt>>& pts, const char* color,
              double width) {
  os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"" << width << "\" points=\"";
  for (const auto& p : pts) os << fmt::format("{:.2f},{:.2f} ", f.px(p.x), f.py(p.y));
  os << "\"/>\n";
}

}  // namespace

void render_svg(std::ostream& os, const Instance& inst) {
  Frame f{std::max(1.0, (pow2(inst.n) - 1).convert_to<double>()), std::max(1.0, inst.total().convert_to<double>())};
  os << fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\">\n", kWidth,
      kHeight, kWidth, kHeight);
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << fmt::format("<line x1=\"{0}\" y1=\"{1}\" x2=\"{2}\" y2=\"{1}\" stroke=\"black\"/>\n", kMargin,
                    kHeight - kMargin, kWidth - kMargin);
  os << fmt::format("<line x1=\"{0}\" y1=\"{1}\" x2=\"{0}\" y2=\"{2}\" stroke=\"black\"/>\n", kMargin,
                    kHeight - kMargin, kMargin);
  if (inst.n <= kSvgPointMaxN) {
    os << "<g fill=\"#888\">\n";
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << inst.n); ++x)
      os << fmt::format("<circle cx=\"{:.2f}\" cy=\"{:.2f}\" r=\"1.5\"/>\n", f.px(BigInt(x)),
                        f.py(sigma(inst, BigInt(x))));
    os << "</g>\n";
  }
  if (inst.n <= 20) {
    for (std::size_t j = 1; j < inst.n; ++j) {
      polyline(os, f, curve_points(inst, CurveKind::P, j), "#9ecae1", 0.8);
      polyline(os, f, curve_points(inst, CurveKind::Q, j), "#fcbba1", 0.8);
    }
  }
  polyline(os, f, curve_points(inst, CurveKind::P, inst.n), "#08519c", 1.6);
  polyline(os, f, curve_points(inst, CurveKind::Q, inst.n), "#a50f15", 1.6);
  os << fmt::format(
      "<line x1=\"{0}\" y1=\"{1:.2f}\" x2=\"{2}\" y2=\"{1:.2f}\" stroke=\"#31a354\" stroke-width=\"1.4\" "
      "stroke-dasharray=\"6,3\"/>\n",
      kMargin, f.py(inst.T), kWidth - kMargin);
  os << fmt::format("<text x=\"{}\" y=\"{:.2f}\" font-size=\"12\" fill=\"#31a354\">T = {}</text>\n",
                    kWidth - kMargin - 120, f.py(inst.T) - 4, inst.T.str());
  os << "</svg>\n";
}

}  // namespace orbital_ssp::cli
