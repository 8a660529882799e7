#include <algorithm>
#include <boost/math/tools/minima.hpp>
#include <cmath>

#include "shapegeo/examples.hpp"

namespace shapegeo {

namespace {

double min_modulus(const LiftPair& p) {
  double m = INFINITY;
  for (std::size_t i = 0; i < p.size(); ++i) m = std::min(m, p.e[i] * p.e[i] + p.f[i] * p.f[i]);
  return m;
}

ExampleFrame make_frame(double parameter, LiftPair pair) {
  ExampleFrame fr;
  fr.parameter = parameter;
  fr.curve = apply_phi(pair);
  fr.rotation_index = rotation_index_from_lift(pair);
  fr.zeros = zero_set(pair);
  fr.bad_set = fr.zeros.crosses_bad_set;
  fr.pair = std::move(pair);
  return fr;
}

}  // namespace

LiftPair fig3_base(std::size_t n) {
  const Grid g{n, Topology::Closed};
  RealVec e(n), f(n);
  const double a = 1.0 / std::sqrt(kPi);
  for (std::size_t i = 0; i < n; ++i) {
    e[i] = a * std::cos(0.5 * g.theta(i));
    f[i] = a * std::sin(0.5 * g.theta(i));
  }
  return make_lift_pair(g, std::move(e), std::move(f), Parity::OddAntiperiodic);
}

LiftDirection fig3_direction(std::size_t n) {
  const Grid g{n, Topology::Closed};
  LiftDirection d{RealVec(n), RealVec(n)};
  for (std::size_t i = 0; i < n; ++i) {
    const double t = g.theta(i);
    const Complex w = std::polar(1.0 / std::sqrt(kPi), 0.5 * t) * Complex(0.5 * std::cos(2 * t), -std::sin(2 * t));
    d.de[i] = w.real();
    d.df[i] = w.imag();
  }
  return d;
}

LiftPair fig3_point(std::size_t n, double tau) {
  LiftPair p = fig3_base(n);
  const LiftDirection d = fig3_direction(n);
  const double scale = std::sqrt(2.0) / std::sqrt(1.25);
  const double c = std::cos(tau), s = std::sin(tau) * scale;
  for (std::size_t i = 0; i < n; ++i) {
    p.e[i] = c * p.e[i] + s * d.de[i];
    p.f[i] = c * p.f[i] + s * d.df[i];
  }
  return p;
}

Fig3Example example_great_circle_fig3(std::size_t frames, std::size_t n) {
  if (n % 4 != 0) throw Error(ErrorKind::InvalidInput, "fig3 grid size must be divisible by 4");
  if (frames < 4) throw Error(ErrorKind::TooCoarse, "fig3 needs at least 4 frames");
  Fig3Example ex;
  for (std::size_t k = 0; k < frames; ++k) {
    const double tau = kPi * static_cast<double>(k) / static_cast<double>(frames);
    ex.frames.push_back(make_frame(tau, fig3_point(n, tau)));
  }
  // The frame at tau = pi is -p(0) and closes the loop.
  const int closing_index = rotation_index_from_lift(fig3_point(n, kPi));
  for (std::size_t k = 0; k < frames; ++k) {
    const int next_index = (k + 1 < frames) ? ex.frames[k + 1].rotation_index : closing_index;
    if (next_index == ex.frames[k].rotation_index) continue;
    const double lo = ex.frames[k].parameter;
    const double hi = lo + kPi / static_cast<double>(frames);
    auto objective = [n](double tau) { return min_modulus(fig3_point(n, tau)); };
    const auto best = boost::math::tools::brent_find_minima(objective, lo, hi, 52);
    ex.crossings.push_back(make_frame(best.first, fig3_point(n, best.first)));
  }
  return ex;
}

std::vector<ExampleFrame> example_genbifurc_fig1(const RealVec& s_values, std::size_t n) {
  std::vector<ExampleFrame> out;
  for (double s : s_values) out.push_back(make_frame(s, genbifurc_pair(s, n)));
  return out;
}

GeodesicInitialData fig3_initial_data(std::size_t n) {
  const LiftPair p0 = fig3_base(n);
  return {apply_phi(p0), pushforward(p0, fig3_direction(n))};
}

GeodesicInitialData genbifurc_initial_data(std::size_t n, double s0) {
  const LiftPair p = genbifurc_pair(s0, n);
  const double c = 2.0 * std::pow(kPi, 3) / 3.0 + kTwoPi * s0 * s0;
  const double dc = 2.0 * kTwoPi * s0;
  LiftDirection d{RealVec(n), RealVec(n)};
  for (std::size_t i = 0; i < n; ++i) {
    const double x = p.e[i] * std::sqrt(c);
    d.de[i] = 0.5 * x * dc / std::pow(c, 1.5);
    d.df[i] = -(1.0 / std::sqrt(c) - 0.5 * s0 * dc / std::pow(c, 1.5));
  }
  return {apply_phi(p), pushforward(p, d)};
}

}  // namespace shapegeo
