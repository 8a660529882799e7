#include "shapegeo/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace shapegeo::svg {

namespace {

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", x);
  return buf;
}

Complex centroid(const ComplexVec& pts) {
  Complex s = 0.0;
  for (const Complex& p : pts) s += p;
  return pts.empty() ? s : s / static_cast<double>(pts.size());
}

}  // namespace

std::string strip(const std::vector<StripFrame>& frames, double cell) {
  double extent = 1e-300;
  for (const StripFrame& f : frames) {
    const Complex c = centroid(f.points);
    for (const Complex& p : f.points) extent = std::max(extent, std::abs(p - c));
  }
  const double scale = 0.42 * cell / extent;
  const double label_h = 18.0;
  const double width = cell * static_cast<double>(std::max<std::size_t>(frames.size(), 1));
  const double height = cell + label_h;

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(width) << "\" height=\"" << num(height)
      << "\" viewBox=\"0 0 " << num(width) << " " << num(height) << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (std::size_t k = 0; k < frames.size(); ++k) {
    const StripFrame& f = frames[k];
    const double ox = cell * (static_cast<double>(k) + 0.5), oy = 0.5 * cell;
    const Complex c = centroid(f.points);
    auto px = [&](const Complex& p) { return num(ox + scale * (p.real() - c.real())); };
    auto py = [&](const Complex& p) { return num(oy - scale * (p.imag() - c.imag())); };
    const char* color = f.marked ? "#c0392b" : "#1f3b73";
    out << "<g>\n<" << (f.closed ? "polygon" : "polyline") << " fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"1.2\" points=\"";
    for (const Complex& p : f.points) out << px(p) << "," << py(p) << " ";
    out << "\"/>\n";
    if (!f.closed && !f.points.empty()) {
      for (const Complex* p : {&f.points.front(), &f.points.back()})
        out << "<circle cx=\"" << px(*p) << "\" cy=\"" << py(*p) << "\" r=\"2.5\" fill=\"" << color << "\"/>\n";
    }
    if (!f.label.empty())
      out << "<text x=\"" << num(ox) << "\" y=\"" << num(cell + 12.0)
          << "\" font-size=\"11\" text-anchor=\"middle\" font-family=\"sans-serif\">" << f.label << "</text>\n";
    out << "</g>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace shapegeo::svg
