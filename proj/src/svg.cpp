#include "toric/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

namespace toric {

namespace {

constexpr double kUnit = 40.0;
constexpr int kArcSteps = 32;

std::string num(double x) {
  if (std::fabs(x) < 0.005) x = 0.0;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", x);
  return buf;
}

struct Frame {
  double radius;
  double px(double x) const { return (x + radius) * kUnit; }
  double py(double y) const { return (radius - y) * kUnit; }
  std::string point(double x, double y) const { return num(px(x)) + "," + num(py(y)); }
};

double angle(const Vec& v) { return std::atan2(v[1].get_d(), v[0].get_d()); }

}  // namespace

std::string render_fan_svg(const Fan& fan, const std::vector<Vec>& dots) {
  if (fan.ambient_rank() != 2)
    throw UnsupportedRank("fan pictures need ambient rank 2, got " + std::to_string(fan.ambient_rank()));
  long extent = 2;
  for (const auto& v : dots)
    for (const auto& x : v) extent = std::max(extent, static_cast<long>(Integer(abs(x)).get_si()));
  for (const auto& r : fan.rays())
    for (const auto& x : r) extent = std::max(extent, std::min(static_cast<long>(Integer(abs(x)).get_si()), 6L));
  const Frame f{static_cast<double>(extent) + 1.0};
  const double size = 2.0 * f.radius * kUnit;
  const double far = 4.0 * f.radius;

  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << num(size) << "\" height=\""
     << num(size) << "\" viewBox=\"0 0 " << num(size) << ' ' << num(size) << "\">\n";
  os << "<defs>\n"
     << "<clipPath id=\"frame\"><rect x=\"0\" y=\"0\" width=\"" << num(size) << "\" height=\"" << num(size)
     << "\"/></clipPath>\n"
     << "<marker id=\"arrow\" viewBox=\"0 0 10 10\" refX=\"9\" refY=\"5\" markerWidth=\"6\" markerHeight=\"6\" "
        "orient=\"auto\"><path d=\"M0,0 L10,5 L0,10 z\" fill=\"#1f3b73\"/></marker>\n"
     << "</defs>\n";
  os << "<rect x=\"0\" y=\"0\" width=\"" << num(size) << "\" height=\"" << num(size) << "\" fill=\"white\"/>\n";

  os << "<g stroke=\"#e3e3e3\" stroke-width=\"1\">\n";
  for (long k = -extent; k <= extent; ++k) {
    os << "<line x1=\"" << num(f.px(k)) << "\" y1=\"0\" x2=\"" << num(f.px(k)) << "\" y2=\"" << num(size) << "\"/>\n";
    os << "<line x1=\"0\" y1=\"" << num(f.py(k)) << "\" x2=\"" << num(size) << "\" y2=\"" << num(f.py(k)) << "\"/>\n";
  }
  os << "</g>\n";

  os << "<g clip-path=\"url(#frame)\" fill=\"#9ec5e8\" fill-opacity=\"0.55\" stroke=\"none\">\n";
  for (const auto& c : fan.maximal_cones()) {
    if (c.rays().size() != 2) continue;
    double a = angle(c.rays()[0]), b = angle(c.rays()[1]);
    const Vec& u = c.rays()[0];
    const Vec& w = c.rays()[1];
    if ((u[0] * w[1] - u[1] * w[0]) < 0) std::swap(a, b);
    if (b < a) b += 2.0 * M_PI;
    os << "<polygon points=\"" << f.point(0, 0);
    for (int s = 0; s <= kArcSteps; ++s) {
      double t = a + (b - a) * s / kArcSteps;
      os << ' ' << f.point(far * std::cos(t), far * std::sin(t));
    }
    os << "\"/>\n";
  }
  os << "</g>\n";

  os << "<g stroke=\"#1f3b73\" stroke-width=\"2\" marker-end=\"url(#arrow)\">\n";
  for (const auto& r : fan.rays()) {
    double reach = (f.radius - 0.3) / std::max(std::fabs(r[0].get_d()), std::fabs(r[1].get_d()));
    os << "<line x1=\"" << num(f.px(0)) << "\" y1=\"" << num(f.py(0)) << "\" x2=\"" << num(f.px(r[0].get_d() * reach))
       << "\" y2=\"" << num(f.py(r[1].get_d() * reach)) << "\"/>\n";
  }
  os << "</g>\n";

  os << "<circle cx=\"" << num(f.px(0)) << "\" cy=\"" << num(f.py(0)) << "\" r=\"3\" fill=\"black\"/>\n";

  std::map<Vec, std::vector<std::size_t>> labels;
  for (std::size_t i = 0; i < dots.size(); ++i) {
    if (dots[i].size() != 2) throw UnsupportedRank("dot " + to_string(dots[i]) + " is not in Z^2");
    labels[dots[i]].push_back(i + 1);
  }
  os << "<g font-family=\"sans-serif\" font-size=\"13\">\n";
  for (const auto& [p, ids] : labels) {
    double x = p[0].get_d(), y = p[1].get_d();
    std::string text;
    for (std::size_t k = 0; k < ids.size(); ++k) text += (k ? "," : "") + std::to_string(ids[k]);
    os << "<circle cx=\"" << num(f.px(x)) << "\" cy=\"" << num(f.py(y)) << "\" r=\"4.5\" fill=\"#c0392b\"/>\n";
    os << "<text x=\"" << num(f.px(x) + 7) << "\" y=\"" << num(f.py(y) - 7) << "\" fill=\"#c0392b\">" << text
       << "</text>\n";
  }
  os << "</g>\n";
  os << "</svg>\n";
  return os.str();
}

}  // namespace toric
