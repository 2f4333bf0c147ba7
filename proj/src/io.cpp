#include "hrange/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>

namespace hrange {

namespace {

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

std::string round_trip(double x) { return fmt("%.17g", x); }
std::string px(double x) { return fmt("%.2f", x); }

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Frame {
  double cx = 0, cy = 0, scale = 1;
  double x(double u) const { return kSvgSize / 2.0 + (u - cx) * scale; }
  double y(double v) const { return kSvgSize / 2.0 - (v - cy) * scale; }
};

Frame fit(double x0, double x1, double y0, double y1, double extent) {
  Frame f;
  f.cx = 0.5 * (x0 + x1);
  f.cy = 0.5 * (y0 + y1);
  const double span = std::max({x1 - x0, y1 - y0, 1e-300});
  f.scale = std::isfinite(span) ? extent / span : 1.0;
  return f;
}

std::string header(const std::string& title) {
  const std::string n = std::to_string(kSvgSize);
  return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + n + "\" height=\"" + n +
         "\" viewBox=\"0 0 " + n + " " + n + "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n" +
         "<text x=\"10\" y=\"20\" font-family=\"monospace\" font-size=\"14\">" + escape(title) + "</text>\n";
}

std::string axes(const Frame& f, double x0, double x1, double y0, double y1) {
  std::string s;
  const double ax = std::clamp(f.x(0.0), 0.0, double(kSvgSize));
  const double ay = std::clamp(f.y(0.0), 0.0, double(kSvgSize));
  s += "<line x1=\"" + px(f.x(x0)) + "\" y1=\"" + px(ay) + "\" x2=\"" + px(f.x(x1)) + "\" y2=\"" + px(ay) +
       "\" stroke=\"#999\" stroke-width=\"1\"/>\n";
  s += "<line x1=\"" + px(ax) + "\" y1=\"" + px(f.y(y0)) + "\" x2=\"" + px(ax) + "\" y2=\"" + px(f.y(y1)) +
       "\" stroke=\"#999\" stroke-width=\"1\"/>\n";
  s += "<text x=\"10\" y=\"" + std::to_string(kSvgSize - 10) +
       "\" font-family=\"monospace\" font-size=\"11\">x: [" + fmt("%.4g", x0) + ", " + fmt("%.4g", x1) +
       "]  y: [" + fmt("%.4g", y0) + ", " + fmt("%.4g", y1) + "]</text>\n";
  return s;
}

}  // namespace

void write_samples_csv(std::ostream& os, const RangeSample& s) {
  os << "x,y,u,v\n";
  for (std::size_t k = 0; k < s.size(); ++k)
    os << round_trip(s.z[k].real()) << ',' << round_trip(s.z[k].imag()) << ',' << round_trip(s.w[k].real())
       << ',' << round_trip(s.w[k].imag()) << '\n';
}

void write_curves_csv(std::ostream& os, const std::vector<ZeroCurve>& curves) {
  os << "curve,component,x,y\n";
  for (std::size_t c = 0; c < curves.size(); ++c)
    for (const cplx p : curves[c].points)
      os << c << ',' << curves[c].component << ',' << round_trip(p.real()) << ',' << round_trip(p.imag())
         << '\n';
}

std::string range_svg(const RangeSample& s, const ArcSet& directions, const std::string& title) {
  const std::size_t stride = std::max<std::size_t>(1, (s.size() + kSvgMaxPoints - 1) / kSvgMaxPoints);
  double x0 = INFINITY, x1 = -INFINITY, y0 = INFINITY, y1 = -INFINITY;
  for (std::size_t k = 0; k < s.size(); k += stride) {
    const cplx w = s.w[k];
    if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) continue;
    x0 = std::min(x0, w.real());
    x1 = std::max(x1, w.real());
    y0 = std::min(y0, w.imag());
    y1 = std::max(y1, w.imag());
  }
  if (!(x0 <= x1)) x0 = x1 = y0 = y1 = 0.0;
  if (x1 - x0 == 0 && y1 - y0 == 0) {
    x0 -= 1;
    x1 += 1;
    y0 -= 1;
    y1 += 1;
  }
  const Frame f = fit(x0, x1, y0, y1, 0.7 * kSvgSize);
  std::string out = header(title) + axes(f, x0, x1, y0, y1);
  out += "<g fill=\"#1f77b4\" fill-opacity=\"0.5\">\n";
  for (std::size_t k = 0; k < s.size(); k += stride) {
    const cplx w = s.w[k];
    if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) continue;
    out += "<circle cx=\"" + px(f.x(w.real())) + "\" cy=\"" + px(f.y(w.imag())) + "\" r=\"1\"/>\n";
  }
  out += "</g>\n";

  // direction arcs on a ring around the plot, angles measured from the centre of the view
  const double c = kSvgSize / 2.0, ring = 0.46 * kSvgSize;
  out += "<circle cx=\"" + px(c) + "\" cy=\"" + px(c) + "\" r=\"" + px(ring) +
         "\" fill=\"none\" stroke=\"#ddd\" stroke-width=\"1\"/>\n";
  auto pt = [&](double t) { return px(c + ring * std::cos(t)) + " " + px(c - ring * std::sin(t)); };
  for (const Arc& a : directions.components()) {
    if (a.length <= 1e-9) {
      out += "<circle cx=\"" + px(c + ring * std::cos(a.start)) + "\" cy=\"" + px(c - ring * std::sin(a.start)) +
             "\" r=\"4\" fill=\"#d62728\"/>\n";
      continue;
    }
    // split long arcs so each SVG arc command spans less than pi
    const int pieces = static_cast<int>(std::ceil(a.length / 3.0));
    std::string d = "M " + pt(a.start);
    for (int k = 1; k <= pieces; ++k) d += " A " + px(ring) + " " + px(ring) + " 0 0 0 " + pt(a.start + a.length * k / pieces);
    out += "<path d=\"" + d + "\" fill=\"none\" stroke=\"#d62728\" stroke-width=\"4\"/>\n";
  }
  out += "</svg>\n";
  return out;
}

std::string zeros_svg(const std::vector<ZeroCurve>& curves, const Box& box, const std::string& title) {
  const Frame f = fit(box.x0, box.x1, box.y0, box.y1, 0.9 * kSvgSize);
  std::string out = header(title) + axes(f, box.x0, box.x1, box.y0, box.y1);
  std::size_t total = 0;
  for (const auto& c : curves) total += c.points.size();
  const std::size_t stride = std::max<std::size_t>(1, (total + kSvgMaxPoints - 1) / kSvgMaxPoints);
  static const char* palette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b"};
  for (const auto& c : curves) {
    std::string d;
    for (std::size_t k = 0; k < c.points.size(); k += stride) {
      d += (d.empty() ? "M " : " L ") + px(f.x(c.points[k].real())) + " " + px(f.y(c.points[k].imag()));
    }
    const cplx last = c.points.back();
    d += " L " + px(f.x(last.real())) + " " + px(f.y(last.imag()));
    out += "<path d=\"" + d + "\" fill=\"none\" stroke=\"" + palette[c.component % 6] +
           "\" stroke-width=\"1.5\"/>\n";
  }
  out += "</svg>\n";
  return out;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path + " for writing");
  f << text;
  if (!f) throw std::runtime_error("failed writing " + path);
}

}  // namespace hrange
