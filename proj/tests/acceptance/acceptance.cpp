// Acceptance checks. Prints one PASS/FAIL line per criterion and exits nonzero on any failure.

#include <Eigen/LU>
#include <Eigen/SVD>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "fixtures.hpp"
#include "shapegeo/curvature.hpp"
#include "shapegeo/dynamics.hpp"
#include "shapegeo/examples.hpp"

#ifdef SHAPEGEO_HAVE_CLI
#include <json.hpp>

#include "shapegeo/cli.hpp"
#endif

using namespace sgtest;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

double observed_order(double coarse, double fine) { return std::log2(coarse / fine); }

// ---- analytic curves ----

using CurveFn = std::function<Complex(double)>;

CurveFn ellipse_fn(double a, double b) {
  return [a, b](double t) { return Complex(a * std::cos(t), b * std::sin(t)); };
}

// rho(t) e^{it}, rho = 1 + amp sum_{k=2..4} (a_k cos kt + b_k sin kt) / k^2.
CurveFn star_fn(unsigned seed, double amp) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  std::array<double, 5> a{}, b{};
  for (int k = 2; k <= 4; ++k) {
    a[k] = g(rng);
    b[k] = g(rng);
  }
  return [=](double t) {
    double rho = 1.0;
    for (int k = 2; k <= 4; ++k) rho += amp * (a[k] * std::cos(k * t) + b[k] * std::sin(k * t)) / (k * k);
    return rho * std::polar(1.0, t);
  };
}

PlaneCurve sample(const CurveFn& f, std::size_t n, const std::function<double(double)>& gamma = nullptr) {
  ComplexVec p(n);
  const RealVec th = closed_thetas(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = f(gamma ? gamma(th[i]) : th[i]);
  return PlaneCurve(std::move(p), Topology::Closed);
}

std::vector<std::pair<CurveFn, CurveFn>> closed_pairs() {
  std::vector<CurveFn> shapes = {ellipse_fn(1.0, 1.0), ellipse_fn(2.0, 1.0), ellipse_fn(1.3, 1.0),
                                 ellipse_fn(3.0, 1.0)};
  for (unsigned s = 1; s <= 6; ++s) shapes.push_back(star_fn(200 + s, 0.3));
  std::vector<std::pair<CurveFn, CurveFn>> out;
  for (std::size_t k = 0; k < 10; ++k) out.emplace_back(shapes[k], shapes[(k + 3) % shapes.size()]);
  return out;
}

MatchOptions full_closed_options() {
  MatchOptions o;
  o.n0 = o.n1 = 128;
  o.n_offsets = 128;
  o.n_rot = 64;
  o.window = 2;
  return o;
}

// ---- 1. isometry ----

double isometry_defect(const PlaneCurve& c, const ComplexVec& h) {
  const auto [lhs, rhs] = verify_isometry(c, h);
  return std::abs(rhs - lhs) / lhs;
}

void isometry_suite(Outcome& o) {
  const std::size_t n = 512;
  double worst = 0.0;
  int count = 0;
  for (const PlaneCurve& raw : smooth_family(4 * n)) {
    const PlaneCurve c = unit_arclength(raw, n);
    for (unsigned seed = 1; seed <= 5; ++seed) {
      worst = std::max(worst, isometry_defect(c, band_limited(n, Topology::Closed, 10 * seed + count)));
    }
    ++count;
  }
  o.detail << count << " curves x 5 fields, worst rel " << fmt(worst);
  o.require(count == 10, "ten curves");
  o.require(worst < 1e-3, "relative agreement 1e-3");
}

// ---- 2. dictionaries ----

struct DictionaryError {
  double speed = 0.0, curvature = 0.0;
};

// Analytic ellipse: |c'| = sqrt(a^2 sin^2 + b^2 cos^2), kappa = ab / |c'|^3.
DictionaryError dictionary_errors(std::size_t n, double a = 2.0, double b = 1.0) {
  const PlaneCurve c = sample(ellipse_fn(a, b), n);
  const LiftPair p = lift_curve(c);
  const RealVec sp = speed_from_lift(p), k = curvature_from_lift(p);
  const RealVec th = closed_thetas(n);
  DictionaryError err;
  double kmax = 0.0, smax = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double s = std::hypot(a * std::sin(th[i]), b * std::cos(th[i]));
    const double kap = a * b / (s * s * s);
    err.speed = std::max(err.speed, std::abs(sp[i] - s));
    err.curvature = std::max(err.curvature, std::abs(k[i] - kap));
    kmax = std::max(kmax, kap);
    smax = std::max(smax, s);
  }
  err.speed /= smax;
  err.curvature /= kmax;
  return err;
}

void dictionary_suite(Outcome& o) {
  const std::size_t n = 512;
  double speed = 0.0, curv = 0.0;
  for (const PlaneCurve& raw : smooth_family(n)) {
    const PlaneCurve c = normalize(raw);
    const ArcData arc = build_arc_data(c);
    const LiftPair p = lift_curve(c);
    const RealVec sp = speed_from_lift(p), k = curvature_from_lift(p);
    const double kscale = sup_abs(arc.curvature), sscale = sup_abs(arc.speed);
    for (std::size_t i = 0; i < n; ++i) {
      // Half the squared lift modulus against |c_theta|.
      const double half = 0.5 * (p.e[i] * p.e[i] + p.f[i] * p.f[i]);
      speed = std::max(speed, std::max(std::abs(sp[i] - arc.speed[i]), std::abs(half - arc.speed[i])) / sscale);
      curv = std::max(curv, std::abs(k[i] - arc.curvature[i]) / kscale);
    }
  }
  const DictionaryError ana = dictionary_errors(n);
  o.detail << "speed rel " << fmt(speed) << ", curvature rel " << fmt(curv) << ", vs analytic ellipse "
           << fmt(ana.curvature);
  o.require(speed < 1e-6, "speed 1e-6");
  o.require(curv < 1e-2 && ana.curvature < 1e-2, "curvature 1e-2");
}

// ---- 3. Jordan angles ----

void jordan_suite(Outcome& o) {
  std::mt19937_64 rng(2025);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  double worst = 0.0;
  bool sign_ok = true;
  for (int k = 0; k < 1000; ++k) {
    Eigen::Matrix2d m;
    m << u(rng), u(rng), u(rng), u(rng);
    const auto [big, small] = jordan_angles(make_projection_matrix(m(0, 0), m(0, 1), m(1, 0), m(1, 1)));
    const Eigen::Vector2d s = Eigen::JacobiSVD<Eigen::Matrix2d>(m).singularValues();
    worst = std::max({worst, std::abs(big - s(0)), std::abs(std::abs(small) - s(1))});
    sign_ok = sign_ok && ((small < 0) == (m.determinant() < 0) || std::abs(small) < 1e-14);
  }
  o.detail << "1000 matrices, worst " << fmt(worst);
  o.require(worst < 1e-12, "SVD agreement 1e-12");
  o.require(sign_ok, "det sign on the smaller value");
}

// ---- 4. quotient invariance ----

void invariance_suite(Outcome& o) {
  const std::size_t n = 256;
  const std::size_t segs = 64;
  MatchOptions opts;
  opts.n0 = opts.n1 = segs;
  opts.n_offsets = segs;
  opts.n_rot = 32;
  opts.window = 2;
  auto gamma = [](double t) { return t + 0.25 * std::sin(t) + 0.05 * std::sin(3.0 * t); };
  double rot = 0.0, shift = 0.0, reparam = 0.0, dp_rot = 0.0, dp_shift = 0.0, dp_reparam = 0.0;
  for (const auto& [f0, f1] : closed_pairs()) {
    const PlaneCurve c0 = unit_arclength(sample(f0, 4 * n), n), c1 = unit_arclength(sample(f1, 4 * n), n);
    const double d = distance_closed_mod_rot(c0, c1);
    rot = std::max({rot, std::abs(distance_closed_mod_rot(c0, rotate(c1, 0.9)) - d),
                    std::abs(distance_closed_mod_rot(rotate(c0, -2.1), c1) - d)});
    for (std::size_t k : {17u, 100u})
      shift = std::max(shift, std::abs(distance_closed_mod_rot(shift_samples(c0, k), shift_samples(c1, k)) - d));
    // The same shapes sampled along gamma, brought back to arclength.
    const PlaneCurve g0 = unit_arclength(sample(f0, 4 * n, gamma), n), g1 = unit_arclength(sample(f1, 4 * n, gamma), n);
    reparam = std::max(reparam, std::abs(distance_closed_mod_rot(g0, g1) - d));

    // The DP lower bound does not see the parametrization of either curve.
    const double lb = dp_match_closed(c0, c1, opts).lower_bound_distance;
    dp_rot = std::max(dp_rot, std::abs(dp_match_closed(c0, rotate(c1, 0.9), opts).lower_bound_distance - lb));
    dp_shift = std::max(dp_shift,
                        std::abs(dp_match_closed(c0, shift_samples(c1, 3 * n / segs), opts).lower_bound_distance - lb));
    dp_reparam = std::max(dp_reparam, std::abs(dp_match_closed(sample(f0, 4 * n, gamma), sample(f1, 4 * n, gamma), opts)
                                                   .lower_bound_distance -
                                               lb));
  }
  o.detail << "distance: rotation " << fmt(rot) << ", shift " << fmt(shift) << ", reparam " << fmt(reparam)
           << "; DP bound: rotation " << fmt(dp_rot) << ", shift " << fmt(dp_shift) << ", reparam "
           << fmt(dp_reparam);
  for (double x : {rot, shift, reparam, dp_rot, dp_shift, dp_reparam}) o.require(x < 1e-6, "invariance 1e-6");
}

// ---- 5. DP correctness ----

double piece_gain(const RealVec& a0, const RealVec& a1, std::size_t k0, std::size_t l0, std::size_t a,
                  std::size_t b) {
  if (a == 0 || b == 0) return 0.0;
  std::vector<double> ts{0.0, 1.0};
  for (std::size_t i = 1; i < a; ++i) ts.push_back(double(i) / double(a));
  for (std::size_t j = 1; j < b; ++j) ts.push_back(double(j) / double(b));
  std::sort(ts.begin(), ts.end());
  double g = 0.0;
  for (std::size_t s = 0; s + 1 < ts.size(); ++s) {
    const double len = ts[s + 1] - ts[s];
    if (len <= 0.0) continue;
    const double mid = 0.5 * (ts[s] + ts[s + 1]);
    const std::size_t k = k0 + static_cast<std::size_t>(mid * double(a));
    const std::size_t l = l0 + static_cast<std::size_t>(mid * double(b));
    g += std::max(0.0, std::cos(0.5 * (a0[k] - a1[l]))) * len * std::sqrt(double(a * b));
  }
  return g;
}

// All monotone staircases through lattice corners, by plain recursion.
double exhaustive(const RealVec& a0, const RealVec& a1) {
  const std::size_t n0 = a0.size(), n1 = a1.size();
  std::function<double(std::size_t, std::size_t)> best = [&](std::size_t k, std::size_t l) -> double {
    if (k == n0 && l == n1) return 0.0;
    double out = -INFINITY;
    for (std::size_t a = 0; k + a <= n0; ++a)
      for (std::size_t b = 0; l + b <= n1; ++b)
        if (a || b) out = std::max(out, piece_gain(a0, a1, k, l, a, b) + best(k + a, l + b));
    return out;
  };
  return best(0, 0) / std::sqrt(double(n0 * n1));
}

void dp_suite(Outcome& o) {
  std::mt19937_64 rng(4242);
  std::uniform_real_distribution<double> u(-4.0, 4.0);
  MatchOptions opts;
  opts.window = 4;
  double worst = 0.0;
  const int trials = 25;
  for (int t = 0; t < trials; ++t) {
    RealVec a0(4), a1(4);
    for (double& x : a0) x = u(rng);
    for (double& x : a1) x = u(rng);
    worst = std::max(worst, std::abs(dp_match_angles(a0, a1, opts).U_value - exhaustive(a0, a1)));
  }

  // Straight target: alpha0 = 0 then gamma, slopes 2 / (1 + c^2) and 2 c^2 / (1 + c^2), c = max(cos(gamma/2), 0).
  const std::size_t n = 96;
  opts.window = 6;
  double map_err = 0.0;
  for (double gam : {2.0 * std::acos(1.0 / std::sqrt(3.0)), 1.4 * kPi}) {
    RealVec a0(n, 0.0);
    for (std::size_t k = n / 2; k < n; ++k) a0[k] = gam;
    const MatchResult r = dp_match_angles(a0, RealVec(n, 0.0), opts);
    const double c = std::max(std::cos(0.5 * gam), 0.0);
    for (std::size_t j = 0; j <= 4 * n; ++j) {
      const double x = kTwoPi * j / (4.0 * n);
      const double phi = x <= kPi ? 2.0 * x / (1.0 + c * c)
                                  : kTwoPi / (1.0 + c * c) + 2.0 * c * c * (x - kPi) / (1.0 + c * c);
      map_err = std::max(map_err, std::abs(r.map.evaluate(x) - phi));
    }
  }
  o.detail << trials << " exhaustive 4x4 instances, worst " << fmt(worst) << "; straight-target map error "
           << fmt(map_err) << " (grid " << fmt(kTwoPi / n) << ")";
  o.require(worst <= 1e-9, "exhaustive optimum 1e-9");
  o.require(map_err <= kTwoPi / n, "closed-form map within grid resolution");
}

// ---- 6. bound ordering ----

void bounds_suite(Outcome& o) {
  const std::size_t n = 256;
  const MatchOptions opts = full_closed_options();
  double worst_slack = INFINITY, max_gap = 0.0, min_gap = INFINITY;
  for (const auto& [f0, f1] : closed_pairs()) {
    const PlaneCurve c0 = unit_arclength(sample(f0, 4 * n), n), c1 = unit_arclength(sample(f1, 4 * n), n);
    const MatchResult m = dp_match_closed(c0, c1, opts);
    const BoundResult b = upper_bound_pipeline(c0, c1, m, n);
    worst_slack = std::min(worst_slack, b.upper - std::max(b.lower, b.lower_scaled));
    max_gap = std::max(max_gap, b.upper - b.lower_scaled);
    min_gap = std::min(min_gap, b.upper - b.lower_scaled);
  }
  o.detail << "10 pairs, min(upper - lower) " << fmt(worst_slack) << ", gap range [" << fmt(min_gap) << ", "
           << fmt(max_gap) << "]";
  o.require(worst_slack >= -1e-8, "lower <= upper");
}

// ---- 7. curvature ----

std::vector<RealVec> complement_basis(const LiftPair& base, int count) {
  const Grid& g = base.grid;
  const double shift = base.parity == Parity::OddAntiperiodic ? 0.5 : 0.0;
  std::vector<RealVec> fixed = {base.e, base.f}, out;
  for (RealVec& b : fixed) {
    for (const RealVec* prev : {&fixed[0]})
      if (prev != &b) {
        const double p = dot(b, *prev, g);
        for (std::size_t i = 0; i < g.n; ++i) b[i] -= p * (*prev)[i];
      }
    const double nb = std::sqrt(dot(b, b, g));
    for (double& x : b) x /= nb;
  }
  for (int m = 0; static_cast<int>(out.size()) < count; ++m) {
    for (int trig = 0; trig < 2 && static_cast<int>(out.size()) < count; ++trig) {
      if (m == 0 && shift == 0.0 && trig == 1) continue;
      RealVec v(g.n);
      for (std::size_t i = 0; i < g.n; ++i) {
        const double a = (m + shift) * g.theta(i);
        v[i] = trig == 0 ? std::cos(a) : std::sin(a);
      }
      for (int pass = 0; pass < 2; ++pass) {
        for (const RealVec& b : fixed) {
          const double p = dot(v, b, g);
          for (std::size_t i = 0; i < g.n; ++i) v[i] -= p * b[i];
        }
        for (const RealVec& b : out) {
          const double p = dot(v, b, g);
          for (std::size_t i = 0; i < g.n; ++i) v[i] -= p * b[i];
        }
      }
      const double nv = std::sqrt(dot(v, v, g));
      if (nv < 1e-3) continue;
      for (double& x : v) x /= nv;
      out.push_back(std::move(v));
    }
  }
  return out;
}

TangentPair random_plane(const LiftPair& base, const std::vector<RealVec>& basis, std::mt19937_64& rng) {
  std::normal_distribution<double> nd;
  const Grid& g = base.grid;
  auto draw = [&] {
    LiftDirection d{RealVec(g.n, 0.0), RealVec(g.n, 0.0)};
    for (const RealVec& b : basis) {
      const double p = nd(rng), q = nd(rng);
      for (std::size_t i = 0; i < g.n; ++i) {
        d.de[i] += p * b[i];
        d.df[i] += q * b[i];
      }
    }
    return d;
  };
  auto ip = [&](const LiftDirection& x, const LiftDirection& y) { return dot(x.de, y.de, g) + dot(x.df, y.df, g); };
  auto scale = [&](LiftDirection& x, double s) {
    for (auto* v : {&x.de, &x.df})
      for (double& z : *v) z *= s;
  };
  LiftDirection y1 = draw(), y2 = draw();
  scale(y1, 1.0 / std::sqrt(ip(y1, y1)));
  const double p = ip(y1, y2);
  for (std::size_t i = 0; i < g.n; ++i) {
    y2.de[i] -= p * y1.de[i];
    y2.df[i] -= p * y1.df[i];
  }
  scale(y2, 1.0 / std::sqrt(ip(y2, y2)));
  return TangentPair{base, y1, y2};
}

void curvature_suite(Outcome& o) {
  const std::size_t n = 256;
  const LiftPair base = lift_curve(unit_arclength(ellipse(4 * n), n));
  const std::vector<RealVec> g = complement_basis(base, 8);
  const Grid& gr = base.grid;

  std::mt19937_64 rng(77);
  double lo = INFINITY, hi = -INFINITY, gap_err = 0.0, gap_plus_err = 0.0;
  for (int t = 0; t < 100; ++t) {
    const TangentPair tp = random_plane(base, g, rng);
    const double kg = curvature_grassmann(tp), ks = curvature_stiefel(tp);
    lo = std::min(lo, kg);
    hi = std::max(hi, kg);
    const double x = dot(tp.y1.de, tp.y2.df, gr), y = dot(tp.y1.df, tp.y2.de, gr);
    gap_err = std::max(gap_err, std::abs(kg - ks - 1.5 * (x - y) * (x - y)));
    gap_plus_err = std::max(gap_plus_err, std::abs(kg - ks - 1.5 * (x + y) * (x + y)));
  }

  // Y1 = (g0, g1) / sqrt 2, Y2 = (g1, -g0) / sqrt 2.
  const double r = 1.0 / std::sqrt(2.0);
  RealVec a = g[0], b = g[1], mb = g[0];
  for (std::size_t i = 0; i < gr.n; ++i) {
    a[i] *= r;
    b[i] *= r;
    mb[i] *= -r;
  }
  const double k_ext = curvature_grassmann(TangentPair{base, {a, b}, {b, mb}});

  double min_rho = INFINITY, min_kb = INFINITY;
  for (double aspect : {1.3, 2.0, 3.0}) {
    const PlaneCurve c = unit_arclength(ellipse(4 * n, aspect, 1.0), n);
    for (unsigned seed = 0; seed < 4; ++seed) {
      const auto [h1, h2] = generated_horizontal_pair(c, seed);
      const CurvatureReport rep = curvature_report(c, h1, h2);
      min_rho = std::min(min_rho, rep.rho);
      min_kb = std::min(min_kb, rep.k_b_sim);
    }
  }

  PlaneCurve big = unit_arclength(ellipse(4 * n), n);
  for (Complex& z : big.points) z *= kTwoPi;
  const double floor = ltop_eigen_floor(build_ltop(big));

  o.detail << "k_Gr in [" << fmt(lo) << ", " << fmt(hi) << "], extremal " << fmt(k_ext)
           << ", gap vs 1.5(<de1,df2>-<df1,de2>)^2 " << fmt(gap_err) << " (with + sign " << fmt(gap_plus_err)
           << "), min rho " << fmt(min_rho) << ", min k_B " << fmt(min_kb) << ", L^T floor " << fmt(floor);
  o.require(lo >= -1e-10 && hi <= 2.0 + 1e-10, "k_Gr in [0, 2]");
  o.require(std::abs(k_ext - 2.0) <= 1e-6, "extremal pair 2");
  o.require(gap_err <= 1e-8, "k_Gr - k_St gap");
  o.require(min_rho >= 0.0 && min_kb >= 0.0, "rho, k_B >= 0");
  o.require(floor >= 0.5 - 1e-3, "L^T floor");
}

// ---- 8. dynamics ----

ComplexVec based(ComplexVec x) {
  const Complex x0 = x.front();
  for (Complex& z : x) z -= x0;
  return x;
}

double fig3_rate() { return std::sqrt(1.25) / std::sqrt(2.0); }

double dynamics_error(std::size_t n, Trajectory* keep = nullptr) {
  const GeodesicInitialData init = fig3_initial_data(n);
  Trajectory tr = integrate_geodesic(init.curve, init.velocity, 1.0, 200);
  if (tr.bad_set_reached) return INFINITY;
  const ComplexVec exact = based(apply_phi(fig3_point(n, fig3_rate())).points);
  const double err = sup_dist(tr.states.back().c.points, exact);
  if (keep) *keep = std::move(tr);
  return err;
}

void dynamics_suite(Outcome& o) {
  Trajectory tr;
  const double err = dynamics_error(512, &tr);
  double de = 0.0, da = 0.0, dsc = 0.0, rep = 0.0;
  if (!tr.states.empty()) {
    const GeodesicState& s0 = tr.states.front();
    const double scale = std::sqrt(s0.energy);
    for (const GeodesicState& s : tr.states) {
      de = std::max(de, std::abs(s.energy - s0.energy) / s0.energy);
      da = std::max(da, std::abs(s.angular - s0.angular) / scale);
      dsc = std::max(dsc, std::abs(s.scaling - s0.scaling) / scale);
      rep = std::max(rep, sup_abs(s.reparam));
    }
  }
  o.detail << "sup error at t=1 " << fmt(err) << ", drift energy " << fmt(de) << ", angular " << fmt(da)
           << ", scaling " << fmt(dsc) << ", reparam sup " << fmt(rep);
  o.require(err < 1e-2, "great circle 1e-2");
  o.require(de < 1e-4 && da < 1e-4 && dsc < 1e-4, "momentum drift 1e-4");
  o.require(rep < 1e-3, "reparametrization momentum 1e-3");
}

// ---- 9. figures ----

// Winding of the chord directions, an index count independent of ArcData.
int chord_winding(const PlaneCurve& c) {
  double total = 0.0;
  const std::size_t n = c.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Complex d0 = c.points[(i + 1) % n] - c.points[i], d1 = c.points[(i + 2) % n] - c.points[(i + 1) % n];
    total += std::arg(d1 / d0);
  }
  return static_cast<int>(std::lround(total / kTwoPi));
}

void figure_suite(Outcome& o) {
  const Fig3Example ex = example_great_circle_fig3(24, 512);
  std::vector<int> windings;
  bool windings_agree = true;
  for (const ExampleFrame& f : ex.frames) {
    if (f.bad_set) continue;
    const int w = chord_winding(f.curve);
    windings_agree = windings_agree && w == f.rotation_index;
    if (windings.empty() || windings.back() != w) windings.push_back(w);
  }
  const bool index_change = windings.size() >= 2 && windings[0] == 1 && windings[1] == -3;
  const bool two_crossings = ex.crossings.size() == 2;

  const std::size_t n = 401;
  const std::vector<ExampleFrame> fam = example_genbifurc_fig1({-0.5, 0.0, 0.5}, n);
  const bool double_zero = fam.size() == 3 && fam[1].zeros.zero_nodes.size() == 1 &&
                           fam[1].zeros.zero_nodes[0] == n / 2 && !fam[0].bad_set && !fam[2].bad_set;

  o.detail << "fig3 windings";
  for (int w : windings) o.detail << " " << w;
  o.detail << ", crossings " << ex.crossings.size() << ", fig1 double zero " << (double_zero ? "yes" : "no");
  o.require(index_change && windings_agree, "index +1 -> -3");
  o.require(two_crossings, "two bad-set crossings");
  o.require(double_zero, "double zero at s = 0");

#ifdef SHAPEGEO_HAVE_CLI
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "shapegeo_acceptance_fig";
  fs::remove_all(dir);
  bool cli_ok = true;
  for (const std::string ex_name : {"fig1", "fig3"}) {
    std::ostringstream out, err;
    const int code = shapegeo::cli::run({"shapegeo", "--out-dir", dir.string(), "-N", ex_name == "fig1" ? "401" : "256",
                                         "--frames", "12", "geodesic", "--example", ex_name},
                                        out, err);
    cli_ok = cli_ok && code == 0 && fs::exists(dir / (ex_name + ".svg"));
    if (!cli_ok) break;
    const nlohmann::json r = nlohmann::json::parse(out.str());
    if (ex_name == "fig1") {
      int zero_frames = 0;
      for (const auto& f : r["frames"]) zero_frames += f["zero_at_center"].get<bool>() && f["parameter"] == 0.0;
      cli_ok = cli_ok && zero_frames == 1;
    } else {
      const auto& idx = r["rotation_indices"];
      cli_ok = cli_ok && r["crossings"].size() == 2 && idx.size() >= 2 && idx[0] == 1 && idx[1] == -3;
    }
  }
  fs::remove_all(dir);
  o.detail << ", CLI strips " << (cli_ok ? "ok" : "wrong");
  o.require(cli_ok, "CLI --example strips");
#endif
}

// ---- 10. convergence ----

void convergence_suite(Outcome& o) {
  // Isometry: both sides converge to G(h, h); the defect is measured against a fine reference.
  auto iso_error = [](std::size_t n) {
    const CurveFn f = ellipse_fn(2.0, 1.0);
    const PlaneCurve c = sample(f, n);
    ComplexVec h(n);
    const RealVec th = closed_thetas(n);
    for (std::size_t i = 0; i < n; ++i) h[i] = Complex(0.3 * std::cos(2 * th[i]), 0.2 * std::sin(3 * th[i]));
    return verify_isometry(c, h).second;
  };
  const double iso_ref = iso_error(16384);
  const double i1 = std::abs(iso_error(128) - iso_ref), i2 = std::abs(iso_error(256) - iso_ref),
               i3 = std::abs(iso_error(512) - iso_ref);

  const DictionaryError d1 = dictionary_errors(128), d2 = dictionary_errors(256), d3 = dictionary_errors(512);
  const double g1 = dynamics_error(128), g2 = dynamics_error(256), g3 = dynamics_error(512);

  const double orders[] = {observed_order(i1, i2), observed_order(i2, i3), observed_order(d1.curvature, d2.curvature),
                           observed_order(d2.curvature, d3.curvature), observed_order(g1, g2), observed_order(g2, g3)};
  o.detail << "orders isometry " << fmt(orders[0]) << "/" << fmt(orders[1]) << ", curvature dictionary "
           << fmt(orders[2]) << "/" << fmt(orders[3]) << ", dynamics " << fmt(orders[4]) << "/" << fmt(orders[5]);
  for (double p : orders) o.require(p >= 1.8, "observed order 1.8");
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    void (*run)(Outcome&);
    double budget_s;  // zero for none
  };
  const Criterion criteria[] = {
      {1, "isometry", isometry_suite, 10.0},     {2, "dictionary", dictionary_suite, 0.0},
      {3, "jordan-angles", jordan_suite, 1.0},   {4, "quotient-invariance", invariance_suite, 0.0},
      {5, "dp-correctness", dp_suite, 0.0},      {6, "bound-ordering", bounds_suite, 60.0},
      {7, "curvature", curvature_suite, 0.0},    {8, "dynamics-oracle", dynamics_suite, 30.0},
      {9, "figures", figure_suite, 0.0},         {10, "convergence", convergence_suite, 0.0},
  };
  int failures = 0;
  for (const Criterion& c : criteria) {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      c.run(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.budget_s > 0.0) o.require(secs < c.budget_s, "runtime budget " + fmt(c.budget_s) + " s");
    failures += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << " C" << c.id << " " << c.name << ": " << o.detail.str() << " ("
              << fmt(secs) << " s)" << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
