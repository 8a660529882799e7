#include "shapegeo/lift.hpp"

#include <algorithm>
#include <cmath>

namespace shapegeo {

namespace {

double wrap_pi(double a) {
  a = std::remainder(a, kTwoPi);
  if (a <= -kPi) a += kTwoPi;
  return a;
}

ComplexVec raw_lift(const ArcData& arc) {
  ComplexVec z(arc.speed.size());
  for (std::size_t i = 0; i < z.size(); ++i)
    z[i] = std::sqrt(2.0 * arc.speed[i]) * std::polar(1.0, 0.5 * arc.tangent_angle[i]);
  return z;
}

Parity parity_for(const PlaneCurve& curve, const ArcData& arc) {
  if (curve.topology == Topology::Open) return Parity::OpenFree;
  return (arc.rotation_index % 2 == 0) ? Parity::EvenPeriodic : Parity::OddAntiperiodic;
}

}  // namespace

const char* parity_name(Parity p) {
  switch (p) {
    case Parity::OpenFree: return "open";
    case Parity::EvenPeriodic: return "even";
    case Parity::OddAntiperiodic: return "odd";
  }
  return "open";
}

Parity parity_from_name(const std::string& name) {
  if (name == "open") return Parity::OpenFree;
  if (name == "even") return Parity::EvenPeriodic;
  if (name == "odd") return Parity::OddAntiperiodic;
  throw Error(ErrorKind::Parse, "unknown parity '" + name + "'");
}

ComplexVec LiftPair::z() const {
  ComplexVec out(e.size());
  for (std::size_t i = 0; i < e.size(); ++i) out[i] = Complex(e[i], f[i]);
  return out;
}

LiftPair LiftPair::operator-() const {
  LiftPair p = *this;
  for (auto& x : p.e) x = -x;
  for (auto& x : p.f) x = -x;
  return p;
}

LiftPair make_lift_pair(const Grid& grid, RealVec e, RealVec f, Parity parity) {
  if (e.size() != grid.n || f.size() != grid.n)
    throw Error(ErrorKind::GridMismatch, "lift samples do not match the grid");
  if ((parity == Parity::OpenFree) != (grid.topology == Topology::Open))
    throw Error(ErrorKind::ParityMismatch, "parity does not match the grid topology");
  LiftPair p;
  p.grid = grid;
  p.e = std::move(e);
  p.f = std::move(f);
  p.parity = parity;
  return p;
}

LiftPair lift_curve(const PlaneCurve& curve) {
  const ArcData arc = build_arc_data(curve);
  const ComplexVec z = raw_lift(arc);
  RealVec e(z.size()), f(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) {
    e[i] = z[i].real();
    f[i] = z[i].imag();
  }
  LiftPair pair = make_lift_pair(curve.grid(), std::move(e), std::move(f), parity_for(curve, arc));
  if (pair.e[0] < 0.0 || (pair.e[0] == 0.0 && pair.f[0] < 0.0)) pair = -pair;
  return pair;
}

PlaneCurve apply_phi(const LiftPair& pair) {
  const std::size_t n = pair.size();
  const double h = pair.grid.spacing();
  ComplexVec c(n);
  c[0] = 0.0;
  Complex prev = 0.5 * Complex(pair.e[0], pair.f[0]) * Complex(pair.e[0], pair.f[0]);
  for (std::size_t i = 1; i < n; ++i) {
    const Complex zi(pair.e[i], pair.f[i]);
    const Complex cur = 0.5 * zi * zi;
    c[i] = c[i - 1] + 0.5 * h * (prev + cur);
    prev = cur;
  }
  return PlaneCurve(std::move(c), pair.grid.topology, true);
}

ZeroSetReport zero_set(const LiftPair& pair, double eps) {
  ZeroSetReport rep;
  RealVec v(pair.size());
  double vmax = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    v[i] = pair.e[i] * pair.e[i] + pair.f[i] * pair.f[i];
    vmax = std::max(vmax, v[i]);
  }
  if (eps < 0.0) eps = 1e-6 * vmax;
  rep.min_value = *std::min_element(v.begin(), v.end());
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] < eps) rep.zero_nodes.push_back(i);
  rep.crosses_bad_set = !rep.zero_nodes.empty();
  return rep;
}

std::pair<double, double> verify_isometry(const PlaneCurve& curve, const ComplexVec& perturbation) {
  const ArcData arc = build_arc_data(curve);
  if (perturbation.size() != curve.size()) throw Error(ErrorKind::GridMismatch, "perturbation size");
  const double lhs = metric_g(arc, perturbation, perturbation);

  double scale_c = 0.0, scale_p = 0.0;
  for (std::size_t i = 0; i < curve.size(); ++i) {
    scale_c = std::max(scale_c, std::abs(curve.points[i]));
    scale_p = std::max(scale_p, std::abs(perturbation[i]));
  }
  if (scale_p == 0.0) return {lhs, 0.0};
  const double eps = 1e-6 * std::max(scale_c, 1e-3) / scale_p;

  const ComplexVec z0 = raw_lift(arc);
  auto lifted = [&](double sgn) {
    PlaneCurve moved = curve;
    for (std::size_t i = 0; i < moved.size(); ++i) moved.points[i] += sgn * eps * perturbation[i];
    ComplexVec z = raw_lift(build_arc_data(moved));
    Complex overlap = 0.0;
    for (std::size_t i = 0; i < z.size(); ++i) overlap += z[i] * std::conj(z0[i]);
    if (overlap.real() < 0.0)
      for (auto& w : z) w = -w;
    return z;
  };
  const ComplexVec zp = lifted(1.0), zm = lifted(-1.0);
  RealVec de(zp.size()), df(zp.size());
  for (std::size_t i = 0; i < zp.size(); ++i) {
    const Complex w = (zp[i] - zm[i]) / (2.0 * eps);
    de[i] = w.real();
    df[i] = w.imag();
  }
  const Grid g = curve.grid();
  return {lhs, dot(de, de, g) + dot(df, df, g)};
}

ComplexVec pushforward(const LiftPair& base, const LiftDirection& dir) {
  const std::size_t n = base.size();
  const double h = base.grid.spacing();
  ComplexVec dc(n);
  dc[0] = 0.0;
  auto rate = [&](std::size_t i) { return Complex(base.e[i], base.f[i]) * Complex(dir.de[i], dir.df[i]); };
  for (std::size_t i = 1; i < n; ++i) dc[i] = dc[i - 1] + 0.5 * h * (rate(i - 1) + rate(i));
  return dc;
}

LiftDirection pullback(const PlaneCurve& curve, const ComplexVec& dc) {
  const ArcData arc = build_arc_data(curve);
  const LiftPair base = lift_curve(curve);
  const ComplexVec d = ds_operator(arc, dc, 1);
  LiftDirection out{RealVec(dc.size()), RealVec(dc.size())};
  for (std::size_t i = 0; i < dc.size(); ++i) {
    const Complex w = 0.5 * std::conj(Complex(base.e[i], base.f[i])) * d[i];
    out.de[i] = w.real();
    out.df[i] = w.imag();
  }
  return out;
}

RealVec lift_d_theta(const RealVec& u, Parity parity) {
  const std::size_t n = u.size();
  if (parity == Parity::OpenFree) return d_theta(u, Topology::Open);
  const double h = kTwoPi / static_cast<double>(n);
  const double s = parity == Parity::OddAntiperiodic ? -1.0 : 1.0;
  RealVec d(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double next = (i + 1 < n) ? u[i + 1] : s * u[0];
    const double prev = (i > 0) ? u[i - 1] : s * u[n - 1];
    d[i] = (next - prev) / (2.0 * h);
  }
  return d;
}

RealVec wronskian_theta(const RealVec& a, const RealVec& b, Parity parity) {
  const RealVec da = lift_d_theta(a, parity), db = lift_d_theta(b, parity);
  RealVec w(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) w[i] = a[i] * db[i] - b[i] * da[i];
  return w;
}

RealVec speed_from_lift(const LiftPair& pair) {
  RealVec r(pair.size());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = 0.5 * (pair.e[i] * pair.e[i] + pair.f[i] * pair.f[i]);
  return r;
}

RealVec curvature_from_lift(const LiftPair& pair) {
  const RealVec w = wronskian_theta(pair.e, pair.f, pair.parity);
  RealVec k(pair.size());
  for (std::size_t i = 0; i < k.size(); ++i) {
    const double q = pair.e[i] * pair.e[i] + pair.f[i] * pair.f[i];
    k[i] = 4.0 * w[i] / (q * q);
  }
  return k;
}

int rotation_index_from_lift(const LiftPair& pair) {
  const std::size_t n = pair.size();
  double total = 0.0;
  double prev = std::atan2(pair.f[0], pair.e[0]);
  for (std::size_t i = 1; i < n; ++i) {
    const double cur = std::atan2(pair.f[i], pair.e[i]);
    total += wrap_pi(cur - prev);
    prev = cur;
  }
  if (pair.parity != Parity::OpenFree) {
    const double s = pair.parity == Parity::OddAntiperiodic ? -1.0 : 1.0;
    total += wrap_pi(std::atan2(s * pair.f[0], s * pair.e[0]) - prev);
  }
  // The tangent angle is twice the argument of e + i f.
  return static_cast<int>(std::lround(2.0 * total / kTwoPi));
}

LiftPair genbifurc_pair(double s, std::size_t n) {
  if (n % 2 == 0) throw Error(ErrorKind::InvalidInput, "genbifurc grid needs an odd node count");
  const Grid grid{n, Topology::Open};
  const double c = 2.0 * std::pow(kPi, 3) / 3.0 + kTwoPi * s * s;
  const double inv = 1.0 / std::sqrt(c);
  RealVec e(n), f(n, s * inv);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = (i == (n - 1) / 2) ? 0.0 : grid.theta(i) - kPi;
    e[i] = x * inv;
  }
  return make_lift_pair(grid, std::move(e), std::move(f), Parity::OpenFree);
}

}  // namespace shapegeo
