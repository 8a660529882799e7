#include "shapegeo/curves.hpp"

#include <Eigen/SparseCholesky>
#include <algorithm>
#include <boost/math/interpolators/cardinal_quintic_b_spline.hpp>
#include <cmath>

#include "operators.hpp"

namespace shapegeo {

namespace {

double wrap_pi(double a) {
  a = std::remainder(a, kTwoPi);
  if (a <= -kPi) a += kTwoPi;
  return a;
}

template <class T>
std::vector<T> derivative(const std::vector<T>& u, Topology topo) {
  const std::size_t n = u.size();
  const double h = Grid{n, topo}.spacing();
  std::vector<T> d(n);
  if (topo == Topology::Closed) {
    for (std::size_t i = 0; i < n; ++i) d[i] = (u[(i + 1) % n] - u[(i + n - 1) % n]) / (2.0 * h);
    return d;
  }
  for (std::size_t i = 1; i + 1 < n; ++i) d[i] = (u[i + 1] - u[i - 1]) / (2.0 * h);
  d[0] = (-3.0 * u[0] + 4.0 * u[1] - u[2]) / (2.0 * h);
  d[n - 1] = (3.0 * u[n - 1] - 4.0 * u[n - 2] + u[n - 3]) / (2.0 * h);
  return d;
}

ComplexVec second_derivative(const ComplexVec& u, Topology topo) {
  const std::size_t n = u.size();
  const double h = Grid{n, topo}.spacing();
  ComplexVec d(n);
  if (topo == Topology::Closed) {
    for (std::size_t i = 0; i < n; ++i)
      d[i] = (u[(i + 1) % n] - 2.0 * u[i] + u[(i + n - 1) % n]) / (h * h);
    return d;
  }
  for (std::size_t i = 1; i + 1 < n; ++i) d[i] = (u[i + 1] - 2.0 * u[i] + u[i - 1]) / (h * h);
  d[0] = (2.0 * u[0] - 5.0 * u[1] + 4.0 * u[2] - u[3]) / (h * h);
  d[n - 1] = (2.0 * u[n - 1] - 5.0 * u[n - 2] + 4.0 * u[n - 3] - u[n - 4]) / (h * h);
  return d;
}

// Curve geometry on closed grids uses fourth-order periodic stencils; fields keep the
// second-order operators above.
ComplexVec curve_derivative(const ComplexVec& u, Topology topo) {
  const std::size_t n = u.size();
  if (topo != Topology::Closed) return derivative(u, topo);
  const double h = Grid{n, topo}.spacing();
  ComplexVec d(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Complex p1 = u[(i + 1) % n], m1 = u[(i + n - 1) % n], p2 = u[(i + 2) % n], m2 = u[(i + n - 2) % n];
    d[i] = (8.0 * (p1 - m1) - (p2 - m2)) / (12.0 * h);
  }
  return d;
}

ComplexVec curve_second_derivative(const ComplexVec& u, Topology topo) {
  const std::size_t n = u.size();
  if (topo != Topology::Closed) return second_derivative(u, topo);
  const double h = Grid{n, topo}.spacing();
  ComplexVec d(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Complex p1 = u[(i + 1) % n], m1 = u[(i + n - 1) % n], p2 = u[(i + 2) % n], m2 = u[(i + n - 2) % n];
    d[i] = (16.0 * (p1 + m1) - (p2 + m2) - 30.0 * u[i]) / (12.0 * h * h);
  }
  return d;
}

double field_rms(const ArcData& arc, const ComplexVec& x) {
  const RealVec w = arc.ds_weights();
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += w[i] * std::norm(x[i]);
  return std::sqrt(s / arc.length);
}

ComplexVec cumulative(const ArcData& arc, const ComplexVec& x) {
  const std::size_t n = x.size();
  const double h = arc.grid.spacing();
  ComplexVec y(n);
  y[0] = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i)
    y[i + 1] = y[i] + 0.5 * h * (x[i] * arc.speed[i] + x[i + 1] * arc.speed[i + 1]);
  return y;
}

void require_mean_zero(const ArcData& arc, const ComplexVec& x) {
  const double mean = std::abs(ds_mean(arc, x));
  if (mean > 1e-8 * std::max(field_rms(arc, x), 1e-300))
    throw Error(ErrorKind::NonZeroMean, "field has ds-mean " + std::to_string(mean));
}

ComplexVec closed_inverse_laplacian(const ArcData& arc, const ComplexVec& x) {
  // -D_s^2 y = x with the value at node 0 pinned; the zero-mean compatibility of x
  // makes the dropped equation redundant. The ds-mean is removed afterwards.
  const std::size_t n = x.size();
  const double h = arc.grid.spacing();
  const RealVec rho = detail::half_speeds(arc);
  const std::size_t m = n - 1;
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(3 * m);
  for (std::size_t k = 0; k < m; ++k) {
    const std::size_t i = k + 1;
    const double left = 1.0 / (rho[i - 1] * h);
    const double right = 1.0 / (rho[i] * h);
    trip.emplace_back(k, k, left + right);
    if (k + 1 < m) {
      trip.emplace_back(k, k + 1, -right);
      trip.emplace_back(k + 1, k, -right);
    }
  }
  Eigen::SparseMatrix<double> a(m, m);
  a.setFromTriplets(trip.begin(), trip.end());
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver(a);
  Eigen::MatrixX2d rhs(m, 2);
  for (std::size_t k = 0; k < m; ++k) {
    const Complex v = x[k + 1] * arc.speed[k + 1] * h;
    rhs(k, 0) = v.real();
    rhs(k, 1) = v.imag();
  }
  const Eigen::MatrixX2d sol = solver.solve(rhs);
  ComplexVec y(n, 0.0);
  for (std::size_t k = 0; k < m; ++k) y[k + 1] = Complex(sol(k, 0), sol(k, 1));
  return remove_ds_mean(arc, y);
}

}  // namespace

PlaneCurve::PlaneCurve(ComplexVec pts, Topology topo, bool based)
    : points(std::move(pts)), topology(topo), base_point_fixed(based) {
  if (points.size() < 8) throw Error(ErrorKind::InvalidInput, "a curve needs at least 8 samples");
}

RealVec ArcData::ds_weights() const {
  RealVec w = grid.weights();
  for (std::size_t i = 0; i < w.size(); ++i) w[i] *= speed[i];
  return w;
}

ComplexVec ArcData::unit_tangent() const {
  ComplexVec v(speed.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = std::polar(1.0, tangent_angle[i]);
  return v;
}

ComplexVec ArcData::unit_normal() const {
  ComplexVec n = unit_tangent();
  for (auto& z : n) z *= Complex(0.0, 1.0);
  return n;
}

ComplexVec d_theta(const ComplexVec& field, Topology topology) { return derivative(field, topology); }
RealVec d_theta(const RealVec& field, Topology topology) { return derivative(field, topology); }

ArcData build_arc_data(const PlaneCurve& curve, double eps_speed) {
  const std::size_t n = curve.size();
  ArcData arc;
  arc.grid = curve.grid();
  const ComplexVec ct = curve_derivative(curve.points, curve.topology);
  const ComplexVec ctt = curve_second_derivative(curve.points, curve.topology);
  arc.speed.resize(n);
  for (std::size_t i = 0; i < n; ++i) arc.speed[i] = std::abs(ct[i]);
  arc.length = trapezoid(arc.speed, arc.grid);
  if (eps_speed < 0.0) eps_speed = 1e-12 * arc.length / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(arc.speed[i] >= eps_speed) || arc.speed[i] == 0.0)
      throw Error(ErrorKind::DegenerateSpeed, "speed vanishes at node " + std::to_string(i));
  }

  arc.tangent_angle.resize(n);
  arc.tangent_angle[0] = std::arg(ct[0]);
  auto step = [&](std::size_t from, std::size_t to) {
    const double d = wrap_pi(std::arg(ct[to]) - std::arg(ct[from]));
    if (std::abs(d) > 0.9 * kPi)
      throw Error(ErrorKind::UnwrapAmbiguous,
                  "tangent turns by more than 0.9 pi between nodes " + std::to_string(from) + " and " +
                      std::to_string(to) + "; resample finer");
    return d;
  };
  for (std::size_t i = 1; i < n; ++i) arc.tangent_angle[i] = arc.tangent_angle[i - 1] + step(i - 1, i);
  if (curve.topology == Topology::Closed) {
    const double total = arc.tangent_angle[n - 1] + step(n - 1, 0) - arc.tangent_angle[0];
    arc.rotation_index = static_cast<int>(std::lround(total / kTwoPi));
  }

  arc.curvature.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    arc.curvature[i] = (std::conj(ct[i]) * ctt[i]).imag() / std::pow(arc.speed[i], 3);
  return arc;
}

PlaneCurve resample_by_arclength(const PlaneCurve& curve, std::size_t n) {
  using Spline = boost::math::interpolators::cardinal_quintic_b_spline<double>;
  const std::size_t m = curve.size();
  const bool closed = curve.topology == Topology::Closed;
  const double h = curve.grid().spacing();
  build_arc_data(curve);  // immersion check

  // Closed curves are padded periodically so the spline is accurate across the seam.
  const std::size_t pad = closed ? 8 : 0;
  RealVec xs, ys;
  for (std::size_t k = 0; k < m + 2 * pad + (closed ? 1 : 0); ++k) {
    const std::size_t idx = (k + m * 4 - pad) % m;
    xs.push_back(curve.points[idx].real());
    ys.push_back(curve.points[idx].imag());
  }
  const double t0 = -static_cast<double>(pad) * h;
  const Spline sx(xs, t0, h);
  const Spline sy(ys, t0, h);
  const double t_max = t0 + h * static_cast<double>(xs.size() - 1);

  const std::size_t sub = 64;
  const std::size_t fine = m * sub;
  const double hf = kTwoPi / static_cast<double>(fine);
  RealVec arclen(fine + 1, 0.0);
  double prev = std::hypot(sx.prime(0.0), sy.prime(0.0));
  for (std::size_t k = 1; k <= fine; ++k) {
    const double t = std::min(hf * static_cast<double>(k), t_max);
    const double cur = std::hypot(sx.prime(t), sy.prime(t));
    arclen[k] = arclen[k - 1] + 0.5 * hf * (prev + cur);
    prev = cur;
  }
  const double total = arclen.back();

  const Grid out_grid{n, curve.topology};
  ComplexVec out(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double target = total * out_grid.theta(j) / kTwoPi;
    auto it = std::upper_bound(arclen.begin(), arclen.end(), target);
    std::size_t k = static_cast<std::size_t>(std::max<std::ptrdiff_t>(it - arclen.begin(), 1)) - 1;
    k = std::min(k, fine - 1);
    const double span = arclen[k + 1] - arclen[k];
    const double frac = span > 0.0 ? (target - arclen[k]) / span : 0.0;
    const double t = std::min(hf * (static_cast<double>(k) + frac), t_max);
    out[j] = Complex(sx(t), sy(t));
  }
  if (!closed) out.back() = curve.points.back();
  out.front() = curve.points.front();
  return PlaneCurve(std::move(out), curve.topology, curve.base_point_fixed);
}

PlaneCurve normalize(const PlaneCurve& curve, NormalizeFix fix) {
  PlaneCurve out = curve;
  if (fix != NormalizeFix::Scale) {
    const Complex c0 = out.points.front();
    for (auto& p : out.points) p -= c0;
    out.points.front() = 0.0;
    out.base_point_fixed = true;
  }
  if (fix != NormalizeFix::Translation) {
    const double len = build_arc_data(out).length;
    for (auto& p : out.points) p /= len;
  }
  return out;
}

ComplexVec ds_operator(const ArcData& arc, const ComplexVec& field, int order) {
  const std::size_t n = field.size();
  if (n != arc.speed.size()) throw Error(ErrorKind::GridMismatch, "field and arc data differ in size");
  const Topology topo = arc.grid.topology;
  const double h = arc.grid.spacing();
  switch (order) {
    case 1: {
      ComplexVec d = derivative(field, topo);
      for (std::size_t i = 0; i < n; ++i) d[i] /= arc.speed[i];
      return d;
    }
    case 2: {
      ComplexVec d(n);
      if (topo == Topology::Closed) {
        const RealVec rho = detail::half_speeds(arc);
        for (std::size_t i = 0; i < n; ++i) {
          const std::size_t ip = (i + 1) % n, im = (i + n - 1) % n;
          const Complex right = (field[ip] - field[i]) / (rho[i] * h);
          const Complex left = (field[i] - field[im]) / (rho[im] * h);
          d[i] = (right - left) / (arc.speed[i] * h);
        }
        return d;
      }
      for (std::size_t i = 1; i + 1 < n; ++i) {
        const double rr = 0.5 * (arc.speed[i] + arc.speed[i + 1]);
        const double rl = 0.5 * (arc.speed[i] + arc.speed[i - 1]);
        d[i] = ((field[i + 1] - field[i]) / (rr * h) - (field[i] - field[i - 1]) / (rl * h)) / (arc.speed[i] * h);
      }
      const ComplexVec ut = derivative(field, topo);
      const ComplexVec utt = second_derivative(field, topo);
      const RealVec rt = derivative(arc.speed, topo);
      for (std::size_t i : {std::size_t{0}, n - 1}) {
        const double r = arc.speed[i];
        d[i] = (utt[i] - (rt[i] / r) * ut[i]) / (r * r);
      }
      return d;
    }
    case -1: {
      if (topo == Topology::Open) return cumulative(arc, field);
      require_mean_zero(arc, field);
      return remove_ds_mean(arc, cumulative(arc, remove_ds_mean(arc, field)));
    }
    case -2: {
      if (topo == Topology::Open) {
        ComplexVec y = cumulative(arc, cumulative(arc, field));
        for (auto& z : y) z = -z;
        return y;
      }
      require_mean_zero(arc, field);
      return closed_inverse_laplacian(arc, remove_ds_mean(arc, field));
    }
    default:
      throw Error(ErrorKind::InvalidInput, "ds_operator order must be one of 1, 2, -1, -2");
  }
}

ComplexVec ds_half(const ArcData& arc, const ComplexVec& field, RealVec* half_weights) {
  const std::size_t n = field.size();
  const double h = arc.grid.spacing();
  const RealVec rho = detail::half_speeds(arc);
  ComplexVec d(n);
  for (std::size_t i = 0; i < n; ++i) d[i] = (field[(i + 1) % n] - field[i]) / (rho[i] * h);
  if (half_weights) {
    half_weights->resize(n);
    for (std::size_t i = 0; i < n; ++i) (*half_weights)[i] = rho[i] * h;
  }
  return d;
}

Complex ds_integral(const ArcData& arc, const ComplexVec& field) {
  const RealVec w = arc.ds_weights();
  Complex s = 0.0;
  for (std::size_t i = 0; i < field.size(); ++i) s += w[i] * field[i];
  return s;
}

double ds_integral(const ArcData& arc, const RealVec& field) {
  const RealVec w = arc.ds_weights();
  double s = 0.0;
  for (std::size_t i = 0; i < field.size(); ++i) s += w[i] * field[i];
  return s;
}

Complex ds_mean(const ArcData& arc, const ComplexVec& field) { return ds_integral(arc, field) / arc.length; }
double ds_mean(const ArcData& arc, const RealVec& field) { return ds_integral(arc, field) / arc.length; }

ComplexVec remove_ds_mean(const ArcData& arc, const ComplexVec& field) {
  if (arc.grid.topology == Topology::Open) return field;
  const Complex m = ds_mean(arc, field);
  ComplexVec out = field;
  for (auto& z : out) z -= m;
  return out;
}

double metric_g(const ArcData& arc, const ComplexVec& h, const ComplexVec& k) {
  const ComplexVec dh = ds_operator(arc, h, 1);
  const ComplexVec dk = ds_operator(arc, k, 1);
  const RealVec w = arc.ds_weights();
  double s = 0.0;
  for (std::size_t i = 0; i < dh.size(); ++i) s += w[i] * (std::conj(dh[i]) * dk[i]).real();
  return s / (2.0 * arc.length);
}

namespace detail {

RealVec half_speeds(const ArcData& arc) {
  const std::size_t n = arc.speed.size();
  RealVec rho(n);
  for (std::size_t i = 0; i < n; ++i) rho[i] = 0.5 * (arc.speed[i] + arc.speed[(i + 1) % n]);
  return rho;
}

Eigen::SparseMatrix<double> closed_stiffness(const ArcData& arc, const RealVec* potential) {
  const std::size_t n = arc.speed.size();
  const double h = arc.grid.spacing();
  const RealVec rho = half_speeds(arc);
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(3 * n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t im = (i + n - 1) % n, ip = (i + 1) % n;
    double diag = 1.0 / (rho[i] * h) + 1.0 / (rho[im] * h);
    if (potential) diag += (*potential)[i] * arc.speed[i] * h;
    trip.emplace_back(i, i, diag);
    trip.emplace_back(i, ip, -1.0 / (rho[i] * h));
    trip.emplace_back(ip, i, -1.0 / (rho[i] * h));
  }
  Eigen::SparseMatrix<double> a(n, n);
  a.setFromTriplets(trip.begin(), trip.end());
  return a;
}

}  // namespace detail

}  // namespace shapegeo
