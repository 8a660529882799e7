#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "shapegeo/matching.hpp"

namespace shapegeo {

namespace {

struct Piece {
  double x0, y0, x1, y1;
};

// Largest y over pieces whose x-range contains x.
double largest_related(const std::vector<Piece>& pieces, double x) {
  double best = -INFINITY;
  for (const Piece& p : pieces) {
    const double lo = std::min(p.x0, p.x1), hi = std::max(p.x0, p.x1);
    if (x < lo - 1e-14 || x > hi + 1e-14) continue;
    double y;
    if (hi - lo <= 1e-15)
      y = std::max(p.y0, p.y1);
    else
      y = p.y0 + (x - p.x0) / (p.x1 - p.x0) * (p.y1 - p.y0);
    best = std::max(best, y);
  }
  return best;
}

std::vector<Piece> pieces_of(const MonotoneMap& m, bool swap) {
  std::vector<Piece> out;
  for (std::size_t i = 0; i + 1 < m.breakpoints.size(); ++i) {
    const auto [u0, p0] = m.breakpoints[i];
    const auto [u1, p1] = m.breakpoints[i + 1];
    out.push_back(swap ? Piece{p0, u0, p1, u1} : Piece{u0, p0, u1, p1});
  }
  return out;
}

// Lift value at parameter u on a closed grid: six-point Lagrange interpolation, with the
// seam sign applied to nodes taken across theta = 2 pi for odd parity.
Complex lift_at(const LiftPair& p, double u) {
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(p.size());
  const double h = p.grid.spacing();
  double x = std::fmod(u, kTwoPi);
  if (x < 0.0) x += kTwoPi;
  const std::ptrdiff_t i = std::min<std::ptrdiff_t>(static_cast<std::ptrdiff_t>(x / h), n - 1);
  const double t = x / h - static_cast<double>(i);
  const bool odd = p.parity == Parity::OddAntiperiodic;
  Complex out = 0.0;
  for (std::ptrdiff_t a = -2; a <= 3; ++a) {
    double w = 1.0;
    for (std::ptrdiff_t b = -2; b <= 3; ++b)
      if (b != a) w *= (t - static_cast<double>(b)) / static_cast<double>(a - b);
    std::ptrdiff_t k = i + a;
    double sign = 1.0;
    if (k < 0) {
      k += n;
      if (odd) sign = -1.0;
    } else if (k >= n) {
      k -= n;
      if (odd) sign = -1.0;
    }
    out += w * sign * Complex(p.e[static_cast<std::size_t>(k)], p.f[static_cast<std::size_t>(k)]);
  }
  return out;
}

}  // namespace

double MonotoneMap::evaluate(double u) const { return largest_related(pieces_of(*this, false), u); }

double MonotoneMap::inverse(double phi) const { return largest_related(pieces_of(*this, true), phi); }

MonotoneMap::Summary MonotoneMap::summary(double tol) const {
  Summary s;
  bool in_flat = false, in_jump = false;
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    const double du = breakpoints[i + 1].first - breakpoints[i].first;
    const double dp = breakpoints[i + 1].second - breakpoints[i].second;
    const bool flat = du > tol && dp <= tol;
    const bool jump = dp > tol && du <= tol;
    if (flat) {
      s.flat_measure += du;
      if (!in_flat) ++s.flat_segments;
    }
    if (jump) {
      s.jump_measure += dp;
      if (!in_jump) ++s.jump_segments;
    }
    in_flat = flat;
    in_jump = jump;
  }
  return s;
}

BoundResult upper_bound_pipeline(const PlaneCurve& c0, const PlaneCurve& c1, const MatchResult& match,
                                 std::size_t n) {
  if (c0.topology != Topology::Closed || c1.topology != Topology::Closed)
    throw Error(ErrorKind::InvalidInput, "upper bound pipeline needs closed curves");
  const LiftPair z0 = lift_curve(normalize(resample_by_arclength(c0, n)));
  const LiftPair z1 = lift_curve(normalize(resample_by_arclength(c1, n)));
  if (z0.parity != z1.parity) throw Error(ErrorKind::ParityMismatch, "rotation indices differ in parity");

  const MonotoneMap& map = match.map;
  const double offset = map.offset;
  const bool odd = z0.parity == Parity::OddAntiperiodic;
  const Grid& g = z1.grid;

  // psi = map^{-1} on each piece with positive phi-extent; flats drop mass.
  RealVec e(n), f(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double theta = g.theta(j);
    double rel = theta - offset;
    double sign = 1.0;
    if (rel < 0.0) {
      rel += kTwoPi;
      if (odd) sign = -1.0;
    }
    double u = 0.0, slope = 0.0;
    bool found = false;
    for (std::size_t i = 0; i + 1 < map.breakpoints.size() && !found; ++i) {
      const auto [u0, p0] = map.breakpoints[i];
      const auto [u1, p1] = map.breakpoints[i + 1];
      if (p1 - p0 <= 1e-15) continue;
      const bool last = i + 2 == map.breakpoints.size();
      if (rel >= p0 && (rel < p1 || (last && rel <= p1 + 1e-12))) {
        slope = (u1 - u0) / (p1 - p0);
        u = u0 + slope * (rel - p0);
        found = true;
      }
    }
    const Complex z = found ? sign * std::sqrt(slope) * lift_at(z0, u) : Complex(0.0);
    e[j] = z.real();
    f[j] = z.imag();
  }
  LiftPair zt = make_lift_pair(g, std::move(e), std::move(f), z1.parity);

  BoundResult out;
  const double kept = zt.norm_e2() + zt.norm_f2();
  const double full = z0.norm_e2() + z0.norm_f2();
  out.lost_mass = std::max(0.0, 1.0 - kept / full);
  out.degenerate = out.lost_mass > 0.5;

  // Loewdin orthonormalization of (e, f).
  Eigen::Matrix2d gram;
  gram << zt.norm_e2(), zt.inner_ef(), zt.inner_ef(), zt.norm_f2();
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(gram);
  if (es.eigenvalues().minCoeff() < 1e-12 * std::max(1.0, es.eigenvalues().maxCoeff()))
    throw Error(ErrorKind::DegenerateReparametrization, "reparametrized lift spans less than a plane");
  const Eigen::Matrix2d inv_sqrt =
      es.eigenvectors() * es.eigenvalues().cwiseInverse().cwiseSqrt().asDiagonal() * es.eigenvectors().transpose();
  for (std::size_t j = 0; j < n; ++j) {
    const double a = zt.e[j], b = zt.f[j];
    zt.e[j] = inv_sqrt(0, 0) * a + inv_sqrt(1, 0) * b;
    zt.f[j] = inv_sqrt(0, 1) * a + inv_sqrt(1, 1) * b;
  }

  out.path = neretin_path(align_frames(zt, z1));
  out.upper = out.path.length();
  out.lower = match.lower_bound_distance;
  out.lower_scaled = std::sqrt(2.0) * match.lower_bound_distance;
  out.reparametrized = std::move(zt);
  return out;
}

}  // namespace shapegeo
