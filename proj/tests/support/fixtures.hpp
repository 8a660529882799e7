#pragma once

#include <algorithm>
#include <cmath>
#include <random>

#include "shapegeo/shapegeo.hpp"

namespace sgtest {

using namespace shapegeo;

inline RealVec closed_thetas(std::size_t n) { return Grid{n, Topology::Closed}.thetas(); }
inline RealVec open_thetas(std::size_t n) { return Grid{n, Topology::Open}.thetas(); }

// Unit-length circle e^{i theta} / (2 pi).
inline PlaneCurve circle(std::size_t n, double radius = 1.0 / kTwoPi) {
  ComplexVec p(n);
  const RealVec th = closed_thetas(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = radius * std::polar(1.0, th[i]);
  return PlaneCurve(std::move(p), Topology::Closed);
}

inline PlaneCurve ellipse(std::size_t n, double a = 2.0, double b = 1.0) {
  ComplexVec p(n);
  const RealVec th = closed_thetas(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = Complex(a * std::cos(th[i]), b * std::sin(th[i]));
  return PlaneCurve(std::move(p), Topology::Closed);
}

// Star-shaped curve rho(theta) e^{i theta}, rho = 1 + amp * sum_k (a_k cos k + b_k sin k) / k^2.
inline PlaneCurve smooth_closed(std::size_t n, unsigned seed, int modes = 4, double amp = 0.12) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<double> a(modes + 1), b(modes + 1);
  for (int k = 2; k <= modes; ++k) {
    a[k] = g(rng);
    b[k] = g(rng);
  }
  ComplexVec p(n);
  const RealVec th = closed_thetas(n);
  for (std::size_t i = 0; i < n; ++i) {
    double rho = 1.0;
    for (int k = 2; k <= modes; ++k) rho += amp * (a[k] * std::cos(k * th[i]) + b[k] * std::sin(k * th[i])) / (k * k);
    p[i] = rho * std::polar(1.0, th[i]);
  }
  return PlaneCurve(std::move(p), Topology::Closed);
}

inline PlaneCurve segment(std::size_t n) {
  ComplexVec p(n);
  const RealVec th = open_thetas(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = Complex(th[i] / kTwoPi, 0.0);
  return PlaneCurve(std::move(p), Topology::Open);
}

// Smooth open arc with bending.
inline PlaneCurve open_arc(std::size_t n, double bend = 0.6) {
  ComplexVec p(n);
  const RealVec th = open_thetas(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = Complex(th[i], bend * std::sin(th[i]) + 0.2 * std::sin(2.0 * th[i]));
  return PlaneCurve(std::move(p), Topology::Open);
}

// Open arc-length curve whose tangent angle steps smoothly by `turn` around the middle.
inline PlaneCurve rounded_kink(std::size_t n, double turn, double width = 0.05) {
  const Grid g{n, Topology::Open};
  const RealVec th = g.thetas();
  ComplexVec p(n);
  p[0] = 0.0;
  auto angle = [&](double x) { return turn * 0.5 * (1.0 + std::tanh((x - kPi) / (width * kTwoPi))); };
  const int sub = 16;
  for (std::size_t i = 1; i < n; ++i) {
    Complex acc = 0.0;
    const double h = (th[i] - th[i - 1]) / sub;
    for (int k = 0; k < sub; ++k) acc += std::polar(h, angle(th[i - 1] + (k + 0.5) * h));
    p[i] = p[i - 1] + acc;
  }
  return PlaneCurve(std::move(p), Topology::Open);
}

inline PlaneCurve rotate(const PlaneCurve& c, double angle) {
  PlaneCurve out = c;
  for (Complex& z : out.points) z *= std::polar(1.0, angle);
  return out;
}

// Cyclic shift of the sample order of a closed curve.
inline PlaneCurve shift_samples(const PlaneCurve& c, std::size_t k) {
  PlaneCurve out = c;
  std::rotate(out.points.begin(), out.points.begin() + static_cast<std::ptrdiff_t>(k % c.size()), out.points.end());
  return out;
}

inline PlaneCurve unit_arclength(const PlaneCurve& c, std::size_t n) {
  return normalize(resample_by_arclength(c, n));
}

// Band-limited complex field sum_{k=1..modes} (a_k cos k theta + b_k sin k theta) / k^2.
// Open fields vanish at theta = 0 after subtracting the first value.
inline ComplexVec band_limited(std::size_t n, Topology topo, unsigned seed, int modes = 4) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  const RealVec th = Grid{n, topo}.thetas();
  ComplexVec v(n, 0.0);
  for (int k = 1; k <= modes; ++k) {
    const Complex a(g(rng), g(rng)), b(g(rng), g(rng));
    for (std::size_t i = 0; i < n; ++i) v[i] += (a * std::cos(k * th[i]) + b * std::sin(k * th[i])) / double(k * k);
  }
  const Complex v0 = v[0];
  for (Complex& z : v) z -= v0;
  return v;
}

inline double sup_dist(const ComplexVec& a, const ComplexVec& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

inline double sup_abs(const RealVec& a) {
  double m = 0.0;
  for (double x : a) m = std::max(m, std::abs(x));
  return m;
}

// Ten fixed smooth closed curves: ellipses of several aspect ratios and random star shapes.
inline std::vector<PlaneCurve> smooth_family(std::size_t n) {
  std::vector<PlaneCurve> out;
  out.push_back(ellipse(n, 2.0, 1.0));
  out.push_back(ellipse(n, 1.3, 1.0));
  out.push_back(ellipse(n, 3.0, 1.0));
  for (unsigned s = 1; s <= 7; ++s) out.push_back(smooth_closed(n, 100 + s, 4, 0.25));
  return out;
}

}  // namespace sgtest
