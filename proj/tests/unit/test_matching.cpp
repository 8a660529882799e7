#include <gtest/gtest.h>

#include <functional>

#include "fixtures.hpp"

using namespace shapegeo;
using namespace sgtest;

namespace {

using Corners = std::vector<std::pair<std::size_t, std::size_t>>;

// Gain of the straight piece from (k0, l0) to (k0 + a, l0 + b), by walking the cell crossings.
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

// Best chain of straight pieces over all lattice corner sequences, by plain recursion.
double exhaustive(const RealVec& a0, const RealVec& a1) {
  const std::size_t n0 = a0.size(), n1 = a1.size();
  std::function<double(std::size_t, std::size_t)> best = [&](std::size_t k, std::size_t l) -> double {
    if (k == n0 && l == n1) return 0.0;
    double out = -INFINITY;
    for (std::size_t a = 0; k + a <= n0; ++a)
      for (std::size_t b = 0; l + b <= n1; ++b) {
        if (a == 0 && b == 0) continue;
        out = std::max(out, piece_gain(a0, a1, k, l, a, b) + best(k + a, l + b));
      }
    return out;
  };
  return best(0, 0) / std::sqrt(double(n0 * n1));
}

Corners corners_of(const MonotoneMap& m, std::size_t n0, std::size_t n1) {
  Corners c;
  for (const auto& [u, p] : m.breakpoints)
    c.emplace_back(static_cast<std::size_t>(std::lround(u * n0 / kTwoPi)),
                   static_cast<std::size_t>(std::lround(p * n1 / kTwoPi)));
  return c;
}

MatchOptions small_closed() {
  MatchOptions o;
  o.n0 = o.n1 = 48;
  o.n_rot = 32;
  o.window = 2;
  return o;
}

}  // namespace

TEST(MonotoneMap, EvaluateInverseSummary) {
  MonotoneMap m;
  m.breakpoints = {{0.0, 0.0}, {1.0, 1.0}, {2.0, 1.0}, {2.0, 3.0}, {kTwoPi, kTwoPi}};
  EXPECT_NEAR(m.evaluate(0.5), 0.5, 1e-15);
  EXPECT_NEAR(m.evaluate(1.5), 1.0, 1e-15);
  EXPECT_NEAR(m.evaluate(2.0), 3.0, 1e-15);  // largest related value at a jump
  EXPECT_NEAR(m.inverse(1.0), 2.0, 1e-15);   // largest related value at a flat
  EXPECT_NEAR(m.inverse(2.0), 2.0, 1e-15);
  const MonotoneMap::Summary s = m.summary();
  EXPECT_EQ(s.flat_segments, 1u);
  EXPECT_NEAR(s.flat_measure, 1.0, 1e-15);
  EXPECT_EQ(s.jump_segments, 1u);
  EXPECT_NEAR(s.jump_measure, 2.0, 1e-15);
}

TEST(DpMatch, IdenticalOpenCurves) {
  const PlaneCurve c = normalize(open_arc(300));
  MatchOptions o;
  o.n0 = o.n1 = 64;
  const MatchResult r = dp_match(c, c, o);
  EXPECT_NEAR(r.U_value, 1.0, 1e-6);
  EXPECT_LT(r.lower_bound_distance, 1e-6);
  for (const auto& [u, p] : r.map.breakpoints) EXPECT_NEAR(u, p, 1e-12);
}

TEST(DpMatch, TooCoarse) {
  MatchOptions o;
  o.n0 = 2;
  EXPECT_THROW(dp_match(segment(64), segment(64), o), Error);
  EXPECT_THROW(dp_match_angles(RealVec(5, 0.0), RealVec(2, 0.0), MatchOptions{}), Error);
}

TEST(DpMatch, ExhaustiveOracle) {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(-4.0, 4.0);
  MatchOptions o;
  o.window = 4;
  for (int trial = 0; trial < 24; ++trial) {
    RealVec a0(4), a1(4);
    for (double& x : a0) x = u(rng);
    for (double& x : a1) x = u(rng);
    const MatchResult r = dp_match_angles(a0, a1, o);
    EXPECT_NEAR(r.U_value, exhaustive(a0, a1), 1e-9) << "trial " << trial;
    EXPECT_NEAR(path_functional(a0, a1, 0.0, corners_of(r.map, 4, 4)), r.U_value, 1e-12);
  }
}

TEST(DpMatch, StraightTargetPiecewiseConstant) {
  // alpha0 = 0 then gamma on halves of the segments, alpha1 = 0. The closed form has slopes
  // 2 / (1 + c^2) and 2 c^2 / (1 + c^2) with c = max(cos(gamma / 2), 0).
  const std::size_t n = 96;
  MatchOptions o;
  o.window = 6;
  for (double gamma : {2.0 * std::acos(1.0 / std::sqrt(3.0)), 1.4 * kPi}) {
    RealVec a0(n, 0.0);
    for (std::size_t k = n / 2; k < n; ++k) a0[k] = gamma;
    const MatchResult r = dp_match_angles(a0, RealVec(n, 0.0), o);
    const double c = std::max(std::cos(0.5 * gamma), 0.0);
    for (std::size_t j = 0; j <= 4 * n; ++j) {
      const double u = kTwoPi * j / (4.0 * n);
      const double oracle = u <= kPi ? 2.0 * u / (1.0 + c * c) : kTwoPi / (1.0 + c * c) + 2.0 * c * c * (u - kPi) / (1.0 + c * c);
      EXPECT_NEAR(straight_target_map(a0, u), oracle, 1e-12);
      EXPECT_NEAR(r.map.evaluate(u), oracle, kTwoPi / n) << "gamma=" << gamma << " u=" << u;
    }
    EXPECT_NEAR(r.U_value, std::sqrt(0.5 * (1.0 + c * c)), 1e-12);
    if (c == 0.0) {
      const MonotoneMap::Summary s = r.map.summary();
      EXPECT_EQ(s.flat_segments, 1u);
      EXPECT_NEAR(s.flat_measure, kPi, 1e-12);
    }
  }
}

TEST(DpMatch, StraightTargetRoundedKink) {
  // Smooth turn to 1.5 pi: the optimal value is sqrt(I / 2 pi) with I = int max(cos(alpha/2), 0)^2,
  // and the map is flat where cos(alpha/2) <= 0.
  const std::size_t n = 128;
  const double turn = 1.5 * kPi, width = 0.04;
  const PlaneCurve kink = normalize(rounded_kink(2049, turn, width));
  MatchOptions o;
  o.n0 = o.n1 = n;
  const MatchResult r = dp_match(kink, segment(2049), o);
  auto alpha = [&](double x) { return turn * 0.5 * (1.0 + std::tanh((x - kPi) / (width * kTwoPi))); };
  const std::size_t m = 1 << 16;
  double integral = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    const double c = std::max(std::cos(0.5 * alpha(kTwoPi * (k + 0.5) / m)), 0.0);
    integral += c * c * kTwoPi / m;
  }
  EXPECT_NEAR(r.U_value, std::sqrt(integral / kTwoPi), 2e-3);
  const MonotoneMap::Summary s = r.map.summary(1e-12);
  EXPECT_GE(s.flat_segments, 1u);
  EXPECT_NEAR(s.flat_measure, kPi, 0.1 * kPi);
  EXPECT_NEAR(r.map.evaluate(kPi + 0.5), kTwoPi, 1e-12);
}

TEST(DpMatch, RefinementNeverDecreases) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  MatchOptions o;
  o.window = 3;
  for (int trial = 0; trial < 5; ++trial) {
    RealVec a0(12), a1(9);
    for (double& x : a0) x = u(rng);
    for (double& x : a1) x = u(rng);
    RealVec f0, f1;
    for (double x : a0) f0.insert(f0.end(), {x, x});
    for (double x : a1) f1.insert(f1.end(), {x, x});
    EXPECT_GE(dp_match_angles(f0, f1, o).U_value, dp_match_angles(a0, a1, o).U_value - 1e-12);
  }
}

TEST(DpMatch, PositivePartDominates) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-6.0, 6.0);
  MatchOptions plus, plain;
  plain.positive_part = false;
  for (int trial = 0; trial < 5; ++trial) {
    RealVec a0(20), a1(17);
    for (double& x : a0) x = u(rng);
    for (double& x : a1) x = u(rng);
    EXPECT_LE(dp_match_angles(a0, a1, plain).U_value, dp_match_angles(a0, a1, plus).U_value + 1e-12);
  }
}

TEST(DpMatch, ReversalSymmetry) {
  const PlaneCurve a = normalize(open_arc(300)), b = normalize(rounded_kink(300, 2.0, 0.08));
  MatchOptions o;
  o.n0 = o.n1 = 64;
  const MatchResult ab = dp_match(a, b, o), ba = dp_match(b, a, o);
  EXPECT_NEAR(ab.U_value, ba.U_value, 1e-9);
  // The transposed graph of one optimum is optimal for the swapped problem.
  Corners t;
  for (const auto& [k, l] : corners_of(ab.map, 64, 64)) t.emplace_back(l, k);
  EXPECT_NEAR(path_functional(segment_angles(b, 64), segment_angles(a, 64), 0.0, t), ba.U_value, 1e-9);
}

TEST(DpMatch, RotationSearch) {
  const PlaneCurve c = normalize(open_arc(300));
  MatchOptions o;
  o.n0 = o.n1 = 48;
  o.mod_rotation = true;
  const MatchResult r = dp_match(c, normalize(rotate(c, 1.1)), o);
  EXPECT_LT(r.lower_bound_distance, 1e-4);
  EXPECT_NEAR(std::remainder(r.rotation + 1.1, 2.0 * kTwoPi), 0.0, 1e-3);
}

TEST(DpMatchClosed, RecoversShift) {
  const std::size_t segs = 48;
  const PlaneCurve c = unit_arclength(smooth_closed(256, 21, 4, 0.3), segs * 4);
  MatchOptions o = small_closed();
  o.refine_rotation = false;
  for (std::size_t k : {5u, 17u}) {
    const MatchResult r = dp_match_closed(c, shift_samples(c, 4 * k), o);
    // c1(theta) = c0(theta + 2 pi k / segs): the start of c0 sits at segment segs - k of c1.
    EXPECT_EQ(r.offset_segments, segs - k);
    EXPECT_LT(r.lower_bound_distance, 1e-6);
    EXPECT_NEAR(r.map.offset, kTwoPi * double(segs - k) / segs, 1e-12);
  }
}

TEST(DpMatchClosed, RotatedCopy) {
  const PlaneCurve c = unit_arclength(ellipse(256), 256);
  MatchOptions o = small_closed();
  o.refine_rotation = false;
  const MatchResult r = dp_match_closed(c, rotate(c, 0.77), o);
  EXPECT_LE(r.lower_bound_distance, kPi / o.n_rot);
}

TEST(DpMatchClosed, LowerBoundBelowParametrizedDistance) {
  const std::size_t n = 256;
  const PlaneCurve c0 = unit_arclength(circle(n), n), c1 = unit_arclength(ellipse(n), n);
  const MatchResult r = dp_match_closed(c0, c1, small_closed());
  EXPECT_LE(r.lower_bound_distance, distance_closed_mod_rot(c0, c1) + 1e-6);
  EXPECT_GT(r.lower_bound_distance, 0.0);
}

TEST(DpMatchClosed, CyclicRelabelingInvariance) {
  // With unit moves every optimal loop meets each column at a lattice node, so cutting
  // both curves elsewhere yields the same optimum.
  std::mt19937_64 rng(8);
  std::normal_distribution<double> g(0.0, 0.4);
  const std::size_t n0 = 24, n1 = 20;
  RealVec a0(n0), a1(n1);
  for (std::size_t k = 0; k < n0; ++k) a0[k] = kTwoPi * k / n0 + g(rng);
  for (std::size_t l = 0; l < n1; ++l) a1[l] = kTwoPi * l / n1 + g(rng);
  MatchOptions o;
  o.window = 1;
  o.n_rot = 16;
  o.refine_rotation = false;
  const double base = dp_match_closed_angles(a0, a1, 1, o).U_value;
  auto relabel = [](const RealVec& a, std::size_t s) {
    RealVec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      const std::size_t src = i + s;
      out[i] = src < a.size() ? a[src] : a[src - a.size()] + kTwoPi;
    }
    return out;
  };
  for (std::size_t s : {3u, 7u}) {
    const double v = dp_match_closed_angles(relabel(a0, s), relabel(a1, s), 1, o).U_value;
    EXPECT_NEAR(v, base, 1e-9);
  }
}

TEST(DpMatchClosed, DeterministicAcrossThreads) {
  const std::size_t n = 256;
  const PlaneCurve c0 = unit_arclength(smooth_closed(n, 2, 4, 0.3), n);
  const PlaneCurve c1 = unit_arclength(smooth_closed(n, 3, 4, 0.3), n);
  MatchOptions o = small_closed();
  o.threads = 1;
  const MatchResult a = dp_match_closed(c0, c1, o);
  o.threads = 3;
  const MatchResult b = dp_match_closed(c0, c1, o);
  EXPECT_EQ(a.U_value, b.U_value);
  EXPECT_EQ(a.offset_segments, b.offset_segments);
  EXPECT_EQ(a.map.breakpoints, b.map.breakpoints);
}

TEST(DpMatchClosed, Errors) {
  EXPECT_THROW(dp_match_closed(segment(64), segment(64), small_closed()), Error);
  ComplexVec eight(256);
  for (std::size_t i = 0; i < 256; ++i) {
    const double t = kTwoPi * static_cast<double>(i) / 256.0;
    eight[i] = Complex(std::sin(t), std::sin(t) * std::cos(t));
  }
  try {
    dp_match_closed(circle(256), PlaneCurve(eight, Topology::Closed), small_closed());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ParityMismatch);
  }
}

TEST(Pipeline, IdenticalCurves) {
  const std::size_t n = 256;
  const PlaneCurve c = unit_arclength(ellipse(n), n);
  const MatchResult m = dp_match_closed(c, c, small_closed());
  const BoundResult b = upper_bound_pipeline(c, c, m, n);
  EXPECT_LT(b.lower, 1e-6);
  EXPECT_LT(b.upper, 1e-2);
  EXPECT_LT(b.lost_mass, 1e-6);
  EXPECT_FALSE(b.degenerate);
}

TEST(Pipeline, Ordering) {
  const std::size_t n = 256;
  std::vector<std::pair<PlaneCurve, PlaneCurve>> pairs;
  pairs.emplace_back(unit_arclength(circle(n), n), unit_arclength(ellipse(n), n));
  pairs.emplace_back(unit_arclength(smooth_closed(n, 40, 4, 0.3), n), unit_arclength(smooth_closed(n, 41, 4, 0.3), n));
  for (const auto& [c0, c1] : pairs) {
    const MatchResult m = dp_match_closed(c0, c1, small_closed());
    const BoundResult b = upper_bound_pipeline(c0, c1, m, n);
    EXPECT_LE(b.lower, b.upper + 1e-8);
    EXPECT_LE(b.lower_scaled, b.upper + 1e-8);
    EXPECT_NEAR(b.lower_scaled, std::sqrt(2.0) * b.lower, 1e-15);
    EXPECT_LT(b.upper, kPi);
    EXPECT_GT(b.upper, 0.0);
    // The reparametrized lift is orthonormal.
    EXPECT_NEAR(b.reparametrized.norm_e2(), 1.0, 1e-9);
    EXPECT_NEAR(b.reparametrized.inner_ef(), 0.0, 1e-9);
  }
}

TEST(Pipeline, OpenCurvesRejected) {
  const MatchResult m = dp_match(segment(64), segment(64), MatchOptions{});
  EXPECT_THROW(upper_bound_pipeline(segment(64), segment(64), m), Error);
}
