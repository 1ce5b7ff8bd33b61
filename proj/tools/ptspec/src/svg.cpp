#include "svg.hpp"

#include <fmt/format.h>

#include <cmath>

namespace ptspec::cli {

namespace {

constexpr double kWidth = 800, kHeight = 560;
constexpr double kLeft = 70, kRight = 20, kTop = 40, kBottom = 60;

std::string num(double v) { return fmt::format("{:.2f}", v); }

// Roughly five ticks at 1, 2 or 5 times a power of ten.
double tick_step(double span) {
  double raw = span / 5.0;
  double mag = std::pow(10.0, std::floor(std::log10(raw)));
  for (double m : {1.0, 2.0, 5.0})
    if (m * mag >= raw) return m * mag;
  return 10.0 * mag;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '<') out += "&lt;";
    else if (c == '>') out += "&gt;";
    else if (c == '&') out += "&amp;";
    else out += c;
  }
  return out;
}

}  // namespace

std::string render_svg(const Plot& plot) {
  const double w = kWidth - kLeft - kRight, h = kHeight - kTop - kBottom;
  const double xSpan = plot.xMax > plot.xMin ? plot.xMax - plot.xMin : 1.0;
  const double ySpan = plot.yMax > plot.yMin ? plot.yMax - plot.yMin : 1.0;
  auto px = [&](double x) { return kLeft + (x - plot.xMin) / xSpan * w; };
  auto py = [&](double y) { return kTop + h - (y - plot.yMin) / ySpan * h; };
  auto inside = [&](double x, double y) {
    return std::isfinite(x) && std::isfinite(y) && x >= plot.xMin && x <= plot.xMax && y >= plot.yMin &&
           y <= plot.yMax;
  };

  std::string s;
  s += fmt::format(R"(<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{}" viewBox="0 0 {} {}">)" "\n",
                   kWidth, kHeight, kWidth, kHeight);
  s += R"(<rect width="100%" height="100%" fill="white"/>)" "\n";
  s += fmt::format(R"(<text x="{}" y="24" font-family="sans-serif" font-size="16" text-anchor="middle">{}</text>)" "\n",
                   num(kLeft + w / 2), escape(plot.title));
  s += fmt::format(R"(<rect x="{}" y="{}" width="{}" height="{}" fill="none" stroke="black"/>)" "\n", num(kLeft),
                   num(kTop), num(w), num(h));

  const double xt = tick_step(xSpan), yt = tick_step(ySpan);
  for (double t = std::ceil(plot.xMin / xt - 1e-9) * xt; t <= plot.xMax + 1e-9 * xSpan; t += xt) {
    double x = px(t);
    s += fmt::format(R"(<line x1="{0}" y1="{1}" x2="{0}" y2="{2}" stroke="black"/>)" "\n", num(x), num(kTop + h),
                     num(kTop + h + 5));
    s += fmt::format(R"(<text x="{}" y="{}" font-family="sans-serif" font-size="12" text-anchor="middle">{:g}</text>)" "\n",
                     num(x), num(kTop + h + 20), std::abs(t) < 1e-12 ? 0.0 : t);
  }
  for (double t = std::ceil(plot.yMin / yt - 1e-9) * yt; t <= plot.yMax + 1e-9 * ySpan; t += yt) {
    double y = py(t);
    s += fmt::format(R"(<line x1="{0}" y1="{2}" x2="{1}" y2="{2}" stroke="black"/>)" "\n", num(kLeft - 5), num(kLeft),
                     num(y));
    s += fmt::format(R"(<text x="{}" y="{}" font-family="sans-serif" font-size="12" text-anchor="end">{:g}</text>)" "\n",
                     num(kLeft - 8), num(y + 4), std::abs(t) < 1e-12 ? 0.0 : t);
  }
  s += fmt::format(R"(<text x="{}" y="{}" font-family="sans-serif" font-size="14" text-anchor="middle">{}</text>)" "\n",
                   num(kLeft + w / 2), num(kHeight - 15), escape(plot.xLabel));
  s += fmt::format(
      R"svg(<text x="18" y="{0}" font-family="sans-serif" font-size="14" text-anchor="middle" transform="rotate(-90 18 {0})">{1}</text>)svg" "\n",
      num(kTop + h / 2), escape(plot.yLabel));

  for (const auto& line : plot.lines) {
    std::string pts;
    auto flush = [&] {
      if (!pts.empty())
        s += R"(<polyline fill="none" stroke="steelblue" stroke-width="1.2" points=")" + pts + "\"/>\n";
      pts.clear();
    };
    for (std::size_t i = 0; i < line.x.size(); ++i) {
      if (!inside(line.x[i], line.y[i])) {
        flush();
        continue;
      }
      if (!pts.empty()) pts += ' ';
      pts += num(px(line.x[i])) + ',' + num(py(line.y[i]));
    }
    flush();
  }

  constexpr double r = 3.0;
  for (const auto& p : plot.points) {
    if (!inside(p.x, p.y)) continue;
    const double x = px(p.x), y = py(p.y);
    if (p.parity == Parity::Even)
      s += fmt::format(R"(<path d="M{} {}H{}M{} {}V{}" stroke="black"/>)" "\n", num(x - r), num(y), num(x + r), num(x),
                       num(y - r), num(y + r));
    else
      s += fmt::format(R"(<path d="M{} {}L{} {}M{} {}L{} {}" stroke="crimson"/>)" "\n", num(x - r), num(y - r),
                       num(x + r), num(y + r), num(x - r), num(y + r), num(x + r), num(y - r));
  }
  s += "</svg>\n";
  return s;
}

}  // namespace ptspec::cli
