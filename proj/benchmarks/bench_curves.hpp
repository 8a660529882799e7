#pragma once

#include <cmath>

#include "shapegeo/shapegeo.hpp"

namespace bench {

using namespace shapegeo;

// Unit-length star-shaped curve 1 + amp (cos 2t + 0.5 sin 3t) on n arclength nodes.
inline PlaneCurve star(std::size_t n, double amp = 0.2, double phase = 0.0) {
  const std::size_t m = 4 * n;
  ComplexVec p(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double t = kTwoPi * static_cast<double>(i) / static_cast<double>(m);
    const double rho = 1.0 + amp * (std::cos(2.0 * t + phase) + 0.5 * std::sin(3.0 * t));
    p[i] = rho * std::polar(1.0, t);
  }
  return normalize(resample_by_arclength(PlaneCurve(std::move(p), Topology::Closed), n));
}

}  // namespace bench
