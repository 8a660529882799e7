#include "shapegeo/dynamics.hpp"

#include <algorithm>
#include <cmath>

namespace shapegeo {

namespace {

double inner(Complex a, Complex b) { return (std::conj(a) * b).real(); }

struct Kinematics {
  ArcData arc;
  ComplexVec v, d;  // unit tangent, D_s c_t
  RealVec q, w;     // |D_s c_t|^2, <D_s c_t, v>
  double energy_avg = 0.0, w_avg = 0.0;
};

Kinematics kinematics(const PlaneCurve& c, const ComplexVec& u) {
  if (u.size() != c.size()) throw Error(ErrorKind::GridMismatch, "velocity size");
  Kinematics k;
  k.arc = build_arc_data(c);
  k.v = k.arc.unit_tangent();
  k.d = ds_operator(k.arc, u, 1);
  const std::size_t n = u.size();
  k.q.resize(n);
  k.w.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    k.q[i] = std::norm(k.d[i]);
    k.w[i] = inner(k.d[i], k.v[i]);
  }
  k.energy_avg = ds_mean(k.arc, k.q);
  k.w_avg = ds_mean(k.arc, k.w);
  return k;
}

void make_based(ComplexVec& x) {
  const Complex x0 = x.front();
  for (auto& z : x) z -= x0;
}

PlaneCurve with_points(const PlaneCurve& like, ComplexVec pts) {
  return PlaneCurve(std::move(pts), like.topology, like.base_point_fixed);
}

ComplexVec axpy(const ComplexVec& x, double a, const ComplexVec& y) {
  ComplexVec out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] + a * y[i];
  return out;
}

RealVec axpy(const RealVec& x, double a, const RealVec& y) {
  RealVec out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] + a * y[i];
  return out;
}

template <class V>
V rk4_combine(const V& x, double h, const V& k1, const V& k2, const V& k3, const V& k4) {
  V out = x;
  for (std::size_t i = 0; i < x.size(); ++i) out[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  return out;
}

// Fourth-order periodic theta derivative.
ComplexVec periodic_d4(const ComplexVec& x, double h) {
  const std::size_t n = x.size();
  ComplexVec d(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Complex p1 = x[(i + 1) % n], p2 = x[(i + 2) % n];
    const Complex m1 = x[(i + n - 1) % n], m2 = x[(i + n - 2) % n];
    d[i] = (8.0 * (p1 - m1) - (p2 - m2)) / (12.0 * h);
  }
  return d;
}

// Fourth-order kinematics on a closed grid: D_s = d/dtheta / |c_theta| and its mean-zero inverse.
struct Closed4 {
  double h = 0.0;
  RealVec speed, w;  // |c_theta|, ds weights
  ComplexVec v;

  explicit Closed4(const PlaneCurve& c) : h(c.grid().spacing()) {
    const ComplexVec ct = periodic_d4(c.points, h);
    const std::size_t n = ct.size();
    speed.resize(n);
    w.resize(n);
    v.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      speed[i] = std::abs(ct[i]);
      if (!(speed[i] > 0.0)) throw Error(ErrorKind::DegenerateSpeed, "vanishing speed");
      w[i] = speed[i] * h;
      v[i] = ct[i] / speed[i];
    }
  }
  Complex mean(const ComplexVec& x) const {
    Complex s = 0.0;
    double t = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      s += w[i] * x[i];
      t += w[i];
    }
    return s / t;
  }
  double mean(const RealVec& x) const {
    double s = 0.0, t = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      s += w[i] * x[i];
      t += w[i];
    }
    return s / t;
  }
  ComplexVec ds(const ComplexVec& x) const {
    ComplexVec d = periodic_d4(x, h);
    for (std::size_t i = 0; i < d.size(); ++i) d[i] /= speed[i];
    return d;
  }
  // Antiderivative in s of x - <x>, with corrected trapezoid steps; zero ds-mean.
  ComplexVec ds_inverse(const ComplexVec& x) const {
    const std::size_t n = x.size();
    const Complex m = mean(x);
    ComplexVec g(n);
    for (std::size_t i = 0; i < n; ++i) g[i] = (x[i] - m) * speed[i];
    const ComplexVec dg = periodic_d4(g, h);
    ComplexVec y(n);
    y[0] = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i)
      y[i + 1] = y[i] + 0.5 * h * (g[i] + g[i + 1]) - h * h / 12.0 * (dg[i + 1] - dg[i]);
    const Complex my = mean(y);
    for (auto& z : y) z -= my;
    return y;
  }
};

// Tangent angle relative to node 0; a jump beyond pi means the path left the immersions.
RealVec turning_profile(const PlaneCurve& c, double eps) {
  const ArcData arc = build_arc_data(c, eps);
  RealVec p(arc.tangent_angle.size());
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = arc.tangent_angle[i] - arc.tangent_angle[0];
  return p;
}

double max_abs_diff(const RealVec& a, const RealVec& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

struct Stepper {
  const IntegrateOptions& opts;
  Trajectory traj;
  RealVec profile;

  // Returns false once the bad set is reached.
  bool accept(GeodesicState s) {
    RealVec p;
    try {
      p = turning_profile(s.c, opts.eps_speed);
    } catch (const Error& e) {
      return stop(e.what());
    }
    if (!profile.empty() && max_abs_diff(p, profile) > kPi) return stop("turning profile jumped");
    profile = std::move(p);
    traj.states.push_back(std::move(s));
    return true;
  }
  bool stop(const std::string& why) {
    traj.bad_set_reached = true;
    traj.bad_set_time = traj.states.empty() ? 0.0 : traj.states.back().t;
    traj.reason = why;
    return false;
  }
};

}  // namespace

GeodesicState make_state(PlaneCurve c, ComplexVec u, double t) {
  GeodesicState s;
  const ArcData arc = build_arc_data(c);
  const Momenta m = momenta(c, u);
  if (c.topology == Topology::Closed && c.size() >= 5) {
    const Closed4 g(c);
    const ComplexVec d = g.ds(u);
    RealVec q(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) q[i] = std::norm(d[i]);
    s.energy = 0.5 * g.mean(q);
  } else {
    s.energy = metric_g(arc, u, u);
  }
  s.angular = m.angular;
  s.scaling = m.scaling;
  s.reparam = m.reparam_field;
  s.c = std::move(c);
  s.u = std::move(u);
  s.t = t;
  return s;
}

ComplexVec geodesic_rhs(const PlaneCurve& c, const ComplexVec& u) {
  const Kinematics k = kinematics(c, u);
  const std::size_t n = u.size();
  ComplexVec field(n);
  for (std::size_t i = 0; i < n; ++i) field[i] = -0.5 * k.q[i] * k.v[i] + k.w[i] * k.d[i];
  ComplexVec rhs;
  if (c.topology == Topology::Closed && n >= 5) {
    // (-D_s^2)^{-1} D_s^2 c = -(c - <c>).
    const Closed4 g(c);
    const ComplexVec d = g.ds(u);
    RealVec q(n), w(n);
    for (std::size_t i = 0; i < n; ++i) {
      q[i] = std::norm(d[i]);
      w[i] = inner(d[i], g.v[i]);
      field[i] = -0.5 * q[i] * g.v[i] + w[i] * d[i];
    }
    const double e = g.mean(q), wa = g.mean(w);
    const ComplexVec integral = g.ds_inverse(field);
    const Complex cm = g.mean(c.points);
    rhs.resize(n);
    for (std::size_t i = 0; i < n; ++i) rhs[i] = -0.5 * e * (c.points[i] - cm) + integral[i] + wa * u[i];
  } else {
    const ComplexVec integral = ds_operator(k.arc, field, -1);
    rhs.resize(n);
    for (std::size_t i = 0; i < n; ++i)
      rhs[i] = -0.5 * k.energy_avg * (c.points[i] - c.points[0]) + integral[i] + k.w_avg * u[i];
  }
  make_based(rhs);
  return rhs;
}

ComplexVec geodesic_rhs(const GeodesicState& state) { return geodesic_rhs(state.c, state.u); }

Momenta momenta(const PlaneCurve& c, const ComplexVec& u) {
  if (u.size() != c.size()) throw Error(ErrorKind::GridMismatch, "velocity size");
  const std::size_t n = u.size();
  Momenta m;
  m.reparam_field.resize(n);
  RealVec ang(n), sc(n);
  if (c.topology == Topology::Closed && n >= 5) {
    const Closed4 g(c);
    const ComplexVec dv = g.ds(g.v), du = g.ds(u);
    const ComplexVec d2 = g.ds(du);
    double len = 0.0;
    for (double x : g.w) len += x;
    for (std::size_t i = 0; i < n; ++i) {
      const double kappa = (std::conj(g.v[i]) * dv[i]).imag();
      m.reparam_field[i] = -g.speed[i] * g.speed[i] * inner(g.v[i], d2[i]) / len;
      ang[i] = kappa * inner(g.v[i], u[i]);
      sc[i] = inner(c.points[i], d2[i]);
    }
    m.angular = g.mean(ang);
    m.scaling = -g.mean(sc);
    return m;
  }
  const ArcData arc = build_arc_data(c);
  const ComplexVec v = arc.unit_tangent();
  const ComplexVec d2 = ds_operator(arc, u, 2);
  for (std::size_t i = 0; i < n; ++i) {
    const double r = arc.speed[i];
    m.reparam_field[i] = -r * r * inner(v[i], d2[i]) / arc.length;
    ang[i] = arc.curvature[i] * inner(v[i], u[i]);
    sc[i] = inner(c.points[i], d2[i]);
  }
  m.angular = ds_integral(arc, ang) / arc.length;
  m.scaling = -ds_integral(arc, sc) / arc.length;
  return m;
}

Momenta momenta(const GeodesicState& state) { return momenta(state.c, state.u); }

Trajectory integrate_geodesic(const PlaneCurve& c0, const ComplexVec& v0, double T, std::size_t steps,
                              const IntegrateOptions& opts) {
  if (steps == 0) throw Error(ErrorKind::InvalidInput, "steps must be positive");
  if (v0.size() != c0.size()) throw Error(ErrorKind::GridMismatch, "velocity size");
  ComplexVec c = c0.points, u = v0;
  make_based(c);
  make_based(u);
  PlaneCurve curve = with_points(c0, c);
  curve.base_point_fixed = true;

  Stepper st{opts, {}, {}};
  if (!st.accept(make_state(curve, u, 0.0))) return st.traj;
  const double h = T / static_cast<double>(steps);
  for (std::size_t k = 0; k < steps; ++k) {
    ComplexVec cn, un;
    try {
      const ComplexVec& x = curve.points;
      const ComplexVec a1 = geodesic_rhs(curve, u);
      const ComplexVec x2 = axpy(x, 0.5 * h, u), u2 = axpy(u, 0.5 * h, a1);
      const ComplexVec a2 = geodesic_rhs(with_points(curve, x2), u2);
      const ComplexVec x3 = axpy(x, 0.5 * h, u2), u3 = axpy(u, 0.5 * h, a2);
      const ComplexVec a3 = geodesic_rhs(with_points(curve, x3), u3);
      const ComplexVec x4 = axpy(x, h, u3), u4 = axpy(u, h, a3);
      const ComplexVec a4 = geodesic_rhs(with_points(curve, x4), u4);
      cn = rk4_combine(x, h, u, u2, u3, u4);
      un = rk4_combine(u, h, a1, a2, a3, a4);
      make_based(cn);
      make_based(un);
      PlaneCurve next = with_points(curve, cn);
      GeodesicState s = make_state(next, un, h * static_cast<double>(k + 1));
      if (!st.accept(std::move(s))) break;
      curve = std::move(next);
      u = std::move(un);
    } catch (const Error& e) {
      st.stop(e.what());
      break;
    }
  }
  return st.traj;
}

RealVec horizontal_geodesic_rhs_scalar(const PlaneCurve& c, const ComplexVec& u, const RealVec& a) {
  if (a.size() != c.size()) throw Error(ErrorKind::GridMismatch, "momentum size");
  const Kinematics k = kinematics(c, u);
  RealVec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    out[i] = -a[i] * (k.w[i] - k.w_avg) + 0.5 * k.arc.curvature[i] * (k.q[i] + k.energy_avg);
  return out;
}

RealVec horizontal_geodesic_rhs_scalar(const GeodesicState& state, const RealVec& a) {
  return horizontal_geodesic_rhs_scalar(state.c, state.u, a);
}

ComplexVec velocity_from_normal_momentum(const PlaneCurve& c, const RealVec& a) {
  if (a.size() != c.size()) throw Error(ErrorKind::GridMismatch, "momentum size");
  const ArcData arc = build_arc_data(c);
  const ComplexVec n = arc.unit_normal();
  ComplexVec f(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) f[i] = a[i] * n[i];
  ComplexVec x = ds_operator(arc, remove_ds_mean(arc, f), -2);
  make_based(x);
  return x;
}

RealVec normal_momentum(const PlaneCurve& c, const ComplexVec& u) {
  const ArcData arc = build_arc_data(c);
  const ComplexVec n = arc.unit_normal();
  const ComplexVec d2 = ds_operator(arc, u, 2);
  RealVec a(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) a[i] = -inner(n[i], d2[i]);
  return a;
}

ComplexVec momentum_rate(const PlaneCurve& c, const ComplexVec& u) {
  const Kinematics k = kinematics(c, u);
  const ComplexVec d2 = ds_operator(k.arc, u, 2);
  const ComplexVec kn = ds_operator(k.arc, c.points, 2);
  ComplexVec out(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    const Complex m = -d2[i];
    out[i] = -(k.w[i] - k.w_avg) * m + 0.5 * (k.energy_avg + k.q[i]) * kn[i] - inner(m, k.d[i]) * k.v[i];
  }
  return out;
}

Trajectory integrate_horizontal_scalar(const PlaneCurve& c0, const RealVec& a0, double T, std::size_t steps,
                                       const IntegrateOptions& opts) {
  if (c0.topology != Topology::Closed) throw Error(ErrorKind::InvalidInput, "scalar scheme needs closed curves");
  if (steps == 0) throw Error(ErrorKind::InvalidInput, "steps must be positive");
  ComplexVec pts = c0.points;
  make_based(pts);
  PlaneCurve curve = with_points(c0, pts);
  curve.base_point_fixed = true;
  RealVec a = a0;

  Stepper st{opts, {}, {}};
  const double h = T / static_cast<double>(steps);
  try {
    if (!st.accept(make_state(curve, velocity_from_normal_momentum(curve, a), 0.0))) return st.traj;
    for (std::size_t k = 0; k < steps; ++k) {
      auto rate = [](const PlaneCurve& c, const RealVec& m, ComplexVec& ct) {
        ct = velocity_from_normal_momentum(c, m);
        return horizontal_geodesic_rhs_scalar(c, ct, m);
      };
      const ComplexVec& x = curve.points;
      ComplexVec u1, u2, u3, u4;
      const RealVec b1 = rate(curve, a, u1);
      const RealVec b2 = rate(with_points(curve, axpy(x, 0.5 * h, u1)), axpy(a, 0.5 * h, b1), u2);
      const RealVec b3 = rate(with_points(curve, axpy(x, 0.5 * h, u2)), axpy(a, 0.5 * h, b2), u3);
      const RealVec b4 = rate(with_points(curve, axpy(x, h, u3)), axpy(a, h, b3), u4);
      ComplexVec cn = rk4_combine(x, h, u1, u2, u3, u4);
      make_based(cn);
      RealVec an = rk4_combine(a, h, b1, b2, b3, b4);
      PlaneCurve next = with_points(curve, cn);
      if (!st.accept(make_state(next, velocity_from_normal_momentum(next, an), h * static_cast<double>(k + 1))))
        break;
      curve = std::move(next);
      a = std::move(an);
    }
  } catch (const Error& e) {
    st.stop(e.what());
  }
  return st.traj;
}

}  // namespace shapegeo
