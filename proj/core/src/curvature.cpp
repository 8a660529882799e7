#include "shapegeo/curvature.hpp"

#include <cmath>

#include "shapegeo/geodesy.hpp"

namespace shapegeo {

namespace {

struct Inner {
  double e1e2, f1f2, e1f2, e2f1, e1f1, e2f2, n1, n2, y12;
};

Inner inner_products(const TangentPair& tp) {
  const Grid& g = tp.base.grid;
  const LiftDirection& a = tp.y1;
  const LiftDirection& b = tp.y2;
  Inner r{};
  r.e1e2 = dot(a.de, b.de, g);
  r.f1f2 = dot(a.df, b.df, g);
  r.e1f2 = dot(a.de, b.df, g);
  r.e2f1 = dot(b.de, a.df, g);
  r.e1f1 = dot(a.de, a.df, g);
  r.e2f2 = dot(b.de, b.df, g);
  r.n1 = dot(a.de, a.de, g) + dot(a.df, a.df, g);
  r.n2 = dot(b.de, b.de, g) + dot(b.df, b.df, g);
  r.y12 = r.e1e2 + r.f1f2;
  return r;
}

// ||de1 ^ de2 + df1 ^ df2||^2 with x ^ y = x (x) y - y (x) x, as a weighted double sum.
double wedge_norm2(const TangentPair& tp) {
  const RealVec w = tp.base.grid.weights();
  const std::size_t n = w.size();
  const RealVec &a1 = tp.y1.de, &a2 = tp.y2.de, &b1 = tp.y1.df, &b2 = tp.y2.df;
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double v = a1[i] * a2[j] - a2[i] * a1[j] + b1[i] * b2[j] - b2[i] * b1[j];
      row += w[j] * v * v;
    }
    s += w[i] * row;
  }
  return s;
}

void check_sizes(const TangentPair& tp) {
  const std::size_t n = tp.base.size();
  for (const LiftDirection* d : {&tp.y1, &tp.y2})
    if (d->de.size() != n || d->df.size() != n) throw Error(ErrorKind::GridMismatch, "tangent vector size");
}

void check_orthonormal(const Inner& in, double tol) {
  if (std::abs(in.n1 - 1.0) > tol || std::abs(in.n2 - 1.0) > tol || std::abs(in.y12) > tol)
    throw Error(ErrorKind::NotOrthonormal, "tangent vectors are not orthonormal");
}

struct UnitFields {
  ArcData arc;
  ComplexVec d1, d2;  // D_s h at unit length
  RealVec w;          // ds weights at unit length
};

UnitFields unit_fields(const PlaneCurve& curve, const ComplexVec& h1, const ComplexVec& h2, bool check) {
  if (h1.size() != curve.size() || h2.size() != curve.size())
    throw Error(ErrorKind::GridMismatch, "tangent field size");
  UnitFields u;
  const double len = build_arc_data(curve).length;
  PlaneCurve c = curve;
  for (auto& p : c.points) p /= len;
  ComplexVec a = h1, b = h2;
  for (auto& x : a) x /= len;
  for (auto& x : b) x /= len;
  u.arc = build_arc_data(c);
  if (check) {
    const double g11 = metric_g(u.arc, a, a), g22 = metric_g(u.arc, b, b), g12 = metric_g(u.arc, a, b);
    if (std::abs(g11 - 1.0) > 1e-6 || std::abs(g22 - 1.0) > 1e-6 || std::abs(g12) > 1e-6)
      throw Error(ErrorKind::NotOrthonormal, "fields are not G-orthonormal");
  }
  u.d1 = ds_operator(u.arc, a, 1);
  u.d2 = ds_operator(u.arc, b, 1);
  u.w = u.arc.ds_weights();
  return u;
}

double det(Complex a, Complex b) { return (std::conj(a) * b).imag(); }
double inner(Complex a, Complex b) { return (std::conj(a) * b).real(); }

// Returns (int det, T) where T integrates (P cos(d/2) - Q sin(d/2))^2 with d = alpha(x) - alpha(y):
// the (1 +- cos d) / 2 kernels plus the cross term -P Q sin d.
std::pair<double, double> immersion_terms(const UnitFields& u) {
  const std::size_t n = u.w.size();
  const RealVec& al = u.arc.tangent_angle;
  double d = 0.0;
  for (std::size_t i = 0; i < n; ++i) d += u.w[i] * det(u.d1[i], u.d2[i]);
  double t = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double c = std::cos(al[i] - al[j]), sn = std::sin(al[i] - al[j]);
      const double p = inner(u.d1[i], u.d2[j]) - inner(u.d2[i], u.d1[j]);
      const double q = det(u.d1[i], u.d2[j]) - det(u.d2[i], u.d1[j]);
      row += u.w[j] * (0.5 * (1.0 + c) * p * p + 0.5 * (1.0 - c) * q * q - p * q * sn);
    }
    t += u.w[i] * row;
  }
  return {d, t};
}

}  // namespace

double curvature_grassmann(const TangentPair& tp, double tol) {
  check_sizes(tp);
  const Inner in = inner_products(tp);
  if (tol >= 0.0) {
    check_orthonormal(in, tol);
    const Grid& g = tp.base.grid;
    for (const LiftDirection* d : {&tp.y1, &tp.y2}) {
      const double m = std::max({std::abs(dot(d->de, tp.base.e, g)), std::abs(dot(d->de, tp.base.f, g)),
                                 std::abs(dot(d->df, tp.base.e, g)), std::abs(dot(d->df, tp.base.f, g))});
      if (m > tol) throw Error(ErrorKind::NotHorizontal, "direction is not orthogonal to span(e, f)");
    }
  }
  const double x = in.e1f2 - in.e2f1;
  return x * x + 0.5 * wedge_norm2(tp);
}

double curvature_stiefel(const TangentPair& tp, double tol) {
  check_sizes(tp);
  const Inner in = inner_products(tp);
  if (tol >= 0.0) {
    check_orthonormal(in, tol);
    for (const LiftDirection* d : {&tp.y1, &tp.y2})
      if (stiefel_tangency_defect(tp.base, *d) > tol)
        throw Error(ErrorKind::NotTangent, "direction is not tangent to the Stiefel manifold");
  }
  const double x = in.e1f2 - in.e2f1;
  return 0.5 * wedge_norm2(tp) - 0.5 * x * x;
}

double curvature_stiefel_expanded(const TangentPair& tp) {
  check_sizes(tp);
  const Grid& g = tp.base.grid;
  const Inner in = inner_products(tp);
  const double ee = dot(tp.y1.de, tp.y1.de, g) * dot(tp.y2.de, tp.y2.de, g);
  const double ff = dot(tp.y1.df, tp.y1.df, g) * dot(tp.y2.df, tp.y2.df, g);
  const double s = in.e1f2 + in.e2f1;
  return ee + ff + 2.0 * in.e1f1 * in.e2f2 - in.e1e2 * in.e1e2 - in.f1f2 * in.f1f2 - 0.5 * s * s;
}

double unscaled_stiefel_curvature(const TangentPair& tp, double lambda1, double lambda2, double ell) {
  if (!(ell > 0.0)) throw Error(ErrorKind::InvalidInput, "scale must be positive");
  const Inner in = inner_products(tp);
  const double k = 2.0 * ell * ell;
  const double a = lambda1 * lambda1 / k + in.n1;
  const double b = lambda2 * lambda2 / k + in.n2;
  const double c = lambda1 * lambda2 / k + in.y12;
  const double area = a * b - c * c;
  if (area < 1e-12) throw Error(ErrorKind::DegeneratePlane, "combined vectors span no plane");
  return curvature_stiefel(tp, -1.0) / area;
}

double curvature_immersion(const PlaneCurve& curve, const ComplexVec& h1, const ComplexVec& h2,
                           bool require_orthonormal) {
  const auto [d, t] = immersion_terms(unit_fields(curve, h1, h2, require_orthonormal));
  return 0.25 * d * d + 0.125 * t;
}

double curvature_immersion_transl_scale(const PlaneCurve& curve, const ComplexVec& h1, const ComplexVec& h2,
                                        bool require_orthonormal) {
  const auto [d, t] = immersion_terms(unit_fields(curve, h1, h2, require_orthonormal));
  return 0.125 * t - 0.125 * d * d;
}

TangentPair tangent_pair_from_fields(const PlaneCurve& curve, const ComplexVec& h1, const ComplexVec& h2) {
  if (h1.size() != curve.size() || h2.size() != curve.size())
    throw Error(ErrorKind::GridMismatch, "tangent field size");
  const double len = build_arc_data(curve).length;
  PlaneCurve c = curve;
  for (auto& p : c.points) p /= len;
  ComplexVec a = h1, b = h2;
  for (auto& x : a) x /= len;
  for (auto& x : b) x /= len;
  return TangentPair{lift_curve(c), pullback(c, a), pullback(c, b)};
}

CurvatureReport curvature_report(const PlaneCurve& curve, const ComplexVec& h1, const ComplexVec& h2) {
  CurvatureReport r;
  const TangentPair tp = tangent_pair_from_fields(curve, h1, h2);
  r.k_gr = curvature_grassmann(tp, -1.0);
  r.k_st = curvature_stiefel(tp, -1.0);
  r.k_imm_sim = curvature_immersion(curve, h1, h2);
  r.rho = oneill_correction(curve, h1, h2, Quotient::Sim);
  r.k_b_sim = r.k_imm_sim + r.rho;
  r.upper_bound = curvature_upper_bound(curve, h2);
  return r;
}

}  // namespace shapegeo
