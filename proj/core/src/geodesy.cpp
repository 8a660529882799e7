#include "shapegeo/geodesy.hpp"

#include <algorithm>
#include <cmath>

namespace shapegeo {

namespace {

double clamp1(double x) { return std::clamp(x, -1.0, 1.0); }

double wrap_pi(double a) {
  a = std::remainder(a, kTwoPi);
  if (a <= -kPi) a += kTwoPi;
  return a;
}

void require_compatible(const LiftPair& p0, const LiftPair& p1) {
  if (p0.size() != p1.size() || p0.grid.topology != p1.grid.topology)
    throw Error(ErrorKind::GridMismatch, "pairs live on different grids");
  if (p0.parity != p1.parity) throw Error(ErrorKind::ParityMismatch, "pairs have different parity");
}

// Interpolation weights sin((1-t) psi) / sin psi and sin(t psi) / sin psi.
std::pair<double, double> slerp_weights(double psi, double t) {
  if (std::abs(psi) < 1e-6) return {1.0 - t, t};
  const double s = std::sin(psi);
  return {std::sin((1.0 - t) * psi) / s, std::sin(t * psi) / s};
}

LiftPair rotated(const LiftPair& p, double half_angle) {
  // Multiplies e + i f by exp(-i half_angle), i.e. rotates the curve by -2 half_angle.
  LiftPair out = p;
  const double c = std::cos(half_angle), s = std::sin(half_angle);
  for (std::size_t i = 0; i < p.size(); ++i) {
    out.e[i] = c * p.e[i] + s * p.f[i];
    out.f[i] = -s * p.e[i] + c * p.f[i];
  }
  return out;
}

double norm_dir(const LiftDirection& d, const Grid& g) { return std::sqrt(dot(d.de, d.de, g) + dot(d.df, d.df, g)); }

}  // namespace

LiftPair GreatCirclePath::evaluate(double t) const {
  const auto [a, b] = slerp_weights(D, t);
  LiftPair out = p0;
  for (std::size_t i = 0; i < p0.size(); ++i) {
    out.e[i] = a * p0.e[i] + b * p1.e[i];
    out.f[i] = a * p0.f[i] + b * p1.f[i];
  }
  return out;
}

GreatCirclePath great_circle(const LiftPair& p0, const LiftPair& p1) {
  require_compatible(p0, p1);
  const double c = 0.5 * (dot(p0.e, p1.e, p0.grid) + dot(p0.f, p1.f, p0.grid));
  GreatCirclePath path{p0, p1, std::acos(clamp1(c))};
  if (path.D > kPi - 1e-8) throw Error(ErrorKind::AntipodalPair, "endpoints are antipodal");
  if (path.D < 1e-8) {
    path.p1 = p0;
    path.D = 0.0;
  }
  return path;
}

double distance_lifted(const LiftPair& p0, const LiftPair& p1, bool mod_rotation) {
  require_compatible(p0, p1);
  const Grid& g = p0.grid;
  const double c = 0.5 * (dot(p0.e, p1.e, g) + dot(p0.f, p1.f, g));
  if (!mod_rotation) return std::acos(clamp1(c));
  const double s = 0.5 * (dot(p0.e, p1.f, g) - dot(p0.f, p1.e, g));
  return std::acos(clamp1(std::hypot(c, s)));
}

double distance_open(const PlaneCurve& c0, const PlaneCurve& c1, bool mod_rotation) {
  return distance_lifted(lift_curve(c0), lift_curve(c1), mod_rotation);
}

ProjectionMatrix make_projection_matrix(double a, double b, double c, double d) {
  ProjectionMatrix pm;
  pm.m = {{{a, b}, {c, d}}};
  pm.c_plus = 0.5 * (a - d);
  pm.c_minus = 0.5 * (a + d);
  pm.s_plus = 0.5 * (c + b);
  pm.s_minus = 0.5 * (c - b);
  return pm;
}

ProjectionMatrix projection_matrix(const LiftPair& p0, const LiftPair& p1) {
  require_compatible(p0, p1);
  const Grid& g = p0.grid;
  return make_projection_matrix(dot(p0.e, p1.e, g), dot(p0.e, p1.f, g), dot(p0.f, p1.e, g), dot(p0.f, p1.f, g));
}

ProjectionMatrix projection_matrix(const PlaneCurve& c0, const PlaneCurve& c1) {
  return projection_matrix(lift_curve(c0), lift_curve(c1));
}

std::pair<double, double> jordan_angles(const ProjectionMatrix& pm) {
  const double x = std::hypot(pm.c_minus, pm.s_minus);
  const double y = std::hypot(pm.c_plus, pm.s_plus);
  return {x + y, x - y};
}

JordanFrame align_frames(const LiftPair& p0, const LiftPair& p1, bool strict) {
  require_compatible(p0, p1);
  if (p0.parity == Parity::OpenFree) throw Error(ErrorKind::InvalidInput, "alignment needs closed curves");
  const ProjectionMatrix pm = projection_matrix(p0, p1);
  const double x = std::hypot(pm.c_minus, pm.s_minus);
  const double y = std::hypot(pm.c_plus, pm.s_plus);

  JordanFrame fr;
  fr.degenerate_minus = x < 1e-10;
  fr.degenerate_plus = y < 1e-10;
  if (strict && (fr.degenerate_minus || fr.degenerate_plus))
    throw Error(ErrorKind::DegenerateAlignment, "rotation indeterminate for one sign");

  // The extra 2 pi in the sum puts the smaller singular value on e, so psi_e >= psi_f.
  const double diff = fr.degenerate_minus ? 0.0 : 2.0 * std::atan2(pm.s_minus, pm.c_minus);
  const double sum = fr.degenerate_plus ? 0.0 : 2.0 * std::atan2(pm.s_plus, pm.c_plus) + kTwoPi;
  const double b0 = 0.5 * (sum + diff), b1 = 0.5 * (sum - diff);
  fr.e0 = rotated(p0, 0.5 * b0);
  fr.e1 = rotated(p1, 0.5 * b1);
  fr.beta0 = wrap_pi(b0);
  fr.beta1 = wrap_pi(b1);
  fr.lambda_e = x - y;
  fr.lambda_f = x + y;
  fr.psi_e = std::acos(clamp1(fr.lambda_e));
  fr.psi_f = std::acos(clamp1(fr.lambda_f));
  return fr;
}

JordanFrame align_rotations(const PlaneCurve& c0, const PlaneCurve& c1, bool strict) {
  return align_frames(lift_curve(c0), lift_curve(c1), strict);
}

double distance_grassmann(const LiftPair& p0, const LiftPair& p1) {
  const auto [big, small] = jordan_angles(projection_matrix(p0, p1));
  return std::hypot(std::acos(clamp1(big)), std::acos(clamp1(small)));
}

double distance_closed_mod_rot(const PlaneCurve& c0, const PlaneCurve& c1) {
  const LiftPair p0 = lift_curve(c0), p1 = lift_curve(c1);
  if (p0.parity == Parity::OpenFree || p1.parity == Parity::OpenFree)
    throw Error(ErrorKind::InvalidInput, "closed curves required");
  return distance_grassmann(p0, p1);
}

NeretinPath neretin_path(const JordanFrame& frame) { return NeretinPath{frame}; }

LiftPair NeretinPath::evaluate(double t) const {
  const auto [ae, be] = slerp_weights(frame.psi_e, t);
  const auto [af, bf] = slerp_weights(frame.psi_f, t);
  LiftPair out = frame.e0;
  for (std::size_t i = 0; i < out.size(); ++i) {
    out.e[i] = ae * frame.e0.e[i] + be * frame.e1.e[i];
    out.f[i] = af * frame.e0.f[i] + bf * frame.e1.f[i];
  }
  return out;
}

double NeretinPath::length() const { return std::hypot(frame.psi_e, frame.psi_f); }

LiftDirection NeretinPath::initial_velocity() const {
  auto rate = [](double psi) -> std::pair<double, double> {
    if (std::abs(psi) < 1e-6) return {-1.0, 1.0};
    return {-psi * std::cos(psi) / std::sin(psi), psi / std::sin(psi)};
  };
  const auto [ae, be] = rate(frame.psi_e);
  const auto [af, bf] = rate(frame.psi_f);
  LiftDirection d{RealVec(frame.e0.size()), RealVec(frame.e0.size())};
  for (std::size_t i = 0; i < d.de.size(); ++i) {
    d.de[i] = ae * frame.e0.e[i] + be * frame.e1.e[i];
    d.df[i] = af * frame.e0.f[i] + bf * frame.e1.f[i];
  }
  return d;
}

double stiefel_tangency_defect(const LiftPair& base, const LiftDirection& dir) {
  const Grid& g = base.grid;
  const double a = dot(base.e, dir.de, g);
  const double b = dot(base.f, dir.df, g);
  const double c = dot(base.e, dir.df, g) + dot(base.f, dir.de, g);
  return std::max({std::abs(a), std::abs(b), std::abs(c)});
}

RealVec horizontality_residual(const LiftPair& base, const LiftDirection& dir) {
  if (dir.de.size() != base.size() || dir.df.size() != base.size())
    throw Error(ErrorKind::GridMismatch, "direction size");
  // Tangency of a smooth direction holds only to discretization order on the grid.
  const double tol = 1e-3 * std::max(norm_dir(dir, base.grid), 1e-300);
  if (base.parity != Parity::OpenFree && stiefel_tangency_defect(base, dir) > tol)
    throw Error(ErrorKind::NotTangent, "direction is not tangent to the Stiefel manifold");
  const RealVec we = wronskian_theta(base.e, dir.de, base.parity);
  const RealVec wf = wronskian_theta(base.f, dir.df, base.parity);
  RealVec r(we.size());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = we[i] + wf[i];
  return r;
}

double rotation_horizontality(const LiftPair& base, const LiftDirection& dir) {
  return -dot(base.f, dir.de, base.grid) + dot(base.e, dir.df, base.grid);
}

}  // namespace shapegeo
