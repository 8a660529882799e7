#include "shapegeo/matching.hpp"

#include <algorithm>
#include <boost/math/tools/minima.hpp>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <limits>
#include <numeric>
#include <thread>

namespace shapegeo {

namespace {

struct Cell {
  int dk, dl;
  double w;  // overlap length times sqrt(a b), in segment units
};

struct Move {
  int a, b;
  std::vector<Cell> cells;
};

std::vector<Move> build_moves(std::size_t window) {
  std::vector<Move> moves;
  const int w = static_cast<int>(std::max<std::size_t>(window, 1));
  for (int a = 1; a <= w; ++a)
    for (int b = 1; b <= w; ++b)
      if (std::gcd(a, b) == 1) moves.push_back({a, b, {}});
  // Diagonal first so that exact ties keep balanced advancement.
  std::stable_sort(moves.begin(), moves.end(), [](const Move& x, const Move& y) {
    const int dx = std::abs(x.a - x.b), dy = std::abs(y.a - y.b);
    if (dx != dy) return dx < dy;
    return x.a + x.b < y.a + y.b;
  });
  for (auto& m : moves) {
    std::vector<double> ts{0.0, 1.0};
    for (int i = 1; i < m.a; ++i) ts.push_back(static_cast<double>(i) / m.a);
    for (int j = 1; j < m.b; ++j) ts.push_back(static_cast<double>(j) / m.b);
    std::sort(ts.begin(), ts.end());
    const double root = std::sqrt(static_cast<double>(m.a * m.b));
    for (std::size_t s = 0; s + 1 < ts.size(); ++s) {
      const double len = ts[s + 1] - ts[s];
      if (len < 1e-15) continue;
      const double mid = 0.5 * (ts[s] + ts[s + 1]);
      m.cells.push_back({static_cast<int>(std::floor(m.a * mid)), static_cast<int>(std::floor(m.b * mid)), len * root});
    }
  }
  moves.push_back({1, 0, {}});
  moves.push_back({0, 1, {}});
  return moves;
}

using Corners = std::vector<std::pair<std::size_t, std::size_t>>;

// Maximizes the sum of move gains over corner chains from (0,0) to (n0,n1).
// F is row-major n0 x n1. Returns the raw sum (segment units).
double dp_core(const std::vector<double>& F, std::size_t n0, std::size_t n1, const std::vector<Move>& moves,
               Corners* corners, std::vector<double>& value, std::vector<unsigned char>& choice) {
  const std::size_t stride = n1 + 1;
  const double ninf = -std::numeric_limits<double>::infinity();
  value.assign((n0 + 1) * stride, ninf);
  choice.assign((n0 + 1) * stride, 0);
  value[0] = 0.0;
  for (std::size_t k = 0; k <= n0; ++k) {
    for (std::size_t l = 0; l <= n1; ++l) {
      if (k == 0 && l == 0) continue;
      double best = ninf;
      unsigned char arg = 0;
      for (std::size_t mi = 0; mi < moves.size(); ++mi) {
        const Move& m = moves[mi];
        if (k < static_cast<std::size_t>(m.a) || l < static_cast<std::size_t>(m.b)) continue;
        const std::size_t k0 = k - m.a, l0 = l - m.b;
        double g = value[k0 * stride + l0];
        for (const Cell& c : m.cells) g += c.w * F[(k0 + c.dk) * n1 + (l0 + c.dl)];
        if (g > best + 1e-12) {
          best = g;
          arg = static_cast<unsigned char>(mi);
        }
      }
      value[k * stride + l] = best;
      choice[k * stride + l] = arg;
    }
  }
  if (corners) {
    corners->clear();
    std::size_t k = n0, l = n1;
    corners->emplace_back(k, l);
    while (k > 0 || l > 0) {
      const Move& m = moves[choice[k * stride + l]];
      k -= m.a;
      l -= m.b;
      corners->emplace_back(k, l);
    }
    std::reverse(corners->begin(), corners->end());
  }
  return value[n0 * stride + n1];
}

double transfer(double c, bool positive) { return positive ? std::max(0.0, c) : c; }

void fill_f(std::vector<double>& F, const RealVec& a0, const RealVec& a1, double beta, bool positive) {
  const std::size_t n0 = a0.size(), n1 = a1.size();
  F.resize(n0 * n1);
  for (std::size_t k = 0; k < n0; ++k)
    for (std::size_t l = 0; l < n1; ++l) F[k * n1 + l] = transfer(std::cos(0.5 * (a0[k] - a1[l] - beta)), positive);
}

// Second curve's segments shifted cyclically, keeping the angle lift continuous.
RealVec shifted_angles(const RealVec& a1, std::size_t shift, int rotation_index) {
  const std::size_t n = a1.size();
  RealVec out(n);
  for (std::size_t l = 0; l < n; ++l) {
    const std::size_t src = l + shift;
    out[l] = src < n ? a1[src] : a1[src - n] + kTwoPi * rotation_index;
  }
  return out;
}

MonotoneMap make_map(const Corners& corners, std::size_t n0, std::size_t n1, Topology topo, double offset) {
  MonotoneMap map;
  map.topology = topo;
  map.offset = offset;
  for (const auto& [k, l] : corners)
    map.breakpoints.emplace_back(kTwoPi * static_cast<double>(k) / n0, kTwoPi * static_cast<double>(l) / n1);
  return map;
}

void finish(MatchResult& res, std::size_t n0, std::size_t n1) {
  res.n0 = n0;
  res.n1 = n1;
  res.lower_bound_distance = std::acos(std::clamp(res.U_value, -1.0, 1.0));
}

void check_sizes(std::size_t n0, std::size_t n1) {
  if (n0 < 3 || n1 < 3) throw Error(ErrorKind::TooCoarse, "matching needs at least 3 segments per curve");
}

int turning_index(const RealVec& a) {
  const double last = a.back();
  const double step = std::remainder(a.front() - last, kTwoPi);
  return static_cast<int>(std::lround((last + step - a.front()) / kTwoPi));
}

// Brent refinement of the rotation within one grid step of beta0.
double refine_rotation(const std::function<double(double)>& value_at, double beta0, double half_width,
                       double& best_value) {
  auto neg = [&](double b) { return -value_at(b); };
  const auto r = boost::math::tools::brent_find_minima(neg, beta0 - half_width, beta0 + half_width, 40);
  if (-r.second > best_value) {
    best_value = -r.second;
    return r.first;
  }
  return beta0;
}

}  // namespace

unsigned resolve_threads(unsigned requested) {
  unsigned t = requested;
  if (t == 0) {
    if (const char* env = std::getenv("SHAPEGEO_THREADS")) t = static_cast<unsigned>(std::max(1, std::atoi(env)));
  }
  if (t == 0) t = std::max(1u, std::thread::hardware_concurrency());
  return t;
}

RealVec segment_angles(const PlaneCurve& curve, std::size_t segments) {
  const bool closed = curve.topology == Topology::Closed;
  const PlaneCurve r = resample_by_arclength(curve, closed ? segments : segments + 1);
  const ArcData arc = build_arc_data(r);
  RealVec a(segments);
  double prev = arc.tangent_angle[0];
  for (std::size_t k = 0; k < segments; ++k) {
    const Complex chord = r.points[(k + 1) % r.size()] - r.points[k];
    const double ang = prev + std::remainder(std::arg(chord) - prev, kTwoPi);
    a[k] = ang;
    prev = ang;
  }
  return a;
}

MatchResult dp_match_angles(const RealVec& alpha0, const RealVec& alpha1, const MatchOptions& opts) {
  const std::size_t n0 = alpha0.size(), n1 = alpha1.size();
  check_sizes(n0, n1);
  const std::vector<Move> moves = build_moves(opts.window);
  const double norm = 1.0 / std::sqrt(static_cast<double>(n0 * n1));
  std::vector<double> F, value;
  std::vector<unsigned char> choice;
  auto value_at = [&](double beta) {
    fill_f(F, alpha0, alpha1, beta, opts.positive_part);
    return dp_core(F, n0, n1, moves, nullptr, value, choice) * norm;
  };

  double beta = 0.0;
  if (opts.mod_rotation) {
    const std::size_t nr = std::max<std::size_t>(opts.n_rot, 1);
    double best = -INFINITY;
    for (std::size_t j = 0; j < nr; ++j) {
      const double b = 2.0 * kTwoPi * static_cast<double>(j) / nr;
      const double v = value_at(b);
      if (v > best + 1e-14) {
        best = v;
        beta = b;
      }
    }
    if (opts.refine_rotation) beta = refine_rotation(value_at, beta, 2.0 * kTwoPi / nr, best);
  }

  MatchResult res;
  Corners corners;
  fill_f(F, alpha0, alpha1, beta, opts.positive_part);
  res.U_value = dp_core(F, n0, n1, moves, &corners, value, choice) * norm;
  res.rotation = std::remainder(beta, 2.0 * kTwoPi);
  res.map = make_map(corners, n0, n1, Topology::Open, 0.0);
  finish(res, n0, n1);
  return res;
}

MatchResult dp_match(const PlaneCurve& c0, const PlaneCurve& c1, const MatchOptions& opts) {
  check_sizes(opts.n0, opts.n1);
  PlaneCurve a = c0, b = c1;
  a.topology = Topology::Open;
  b.topology = Topology::Open;
  if (c0.topology == Topology::Closed) a.points.push_back(c0.points.front());
  if (c1.topology == Topology::Closed) b.points.push_back(c1.points.front());
  return dp_match_angles(segment_angles(a, opts.n0), segment_angles(b, opts.n1), opts);
}

MatchResult dp_match_closed_angles(const RealVec& alpha0, const RealVec& alpha1, int rotation_index1,
                                   const MatchOptions& opts) {
  const std::size_t n0 = alpha0.size(), n1 = alpha1.size();
  check_sizes(n0, n1);
  const std::vector<Move> moves = build_moves(opts.window);
  const double norm = 1.0 / std::sqrt(static_cast<double>(n0 * n1));
  const std::size_t n_off = opts.n_offsets == 0 ? n1 : std::min(opts.n_offsets, n1);
  const std::size_t nr = std::max<std::size_t>(opts.n_rot, 1);
  const bool odd = (rotation_index1 % 2) != 0;

  // Signed cosine tables per rotation for the unshifted second curve; a wrapped column
  // picks up a factor (-1)^index from the 2 pi index shift of its angle.
  std::vector<std::vector<double>> tables(nr, std::vector<double>(n0 * n1));
  for (std::size_t j = 0; j < nr; ++j) {
    const double beta = 2.0 * kTwoPi * static_cast<double>(j) / nr;
    for (std::size_t k = 0; k < n0; ++k)
      for (std::size_t l = 0; l < n1; ++l) tables[j][k * n1 + l] = std::cos(0.5 * (alpha0[k] - alpha1[l] - beta));
  }
  auto shift_of = [&](std::size_t o) { return (o * n1) / n_off; };

  // Grid values per (offset, rotation); each worker owns its offsets.
  std::vector<double> grid(n_off * nr, -INFINITY);
  const unsigned nthreads = std::min<unsigned>(resolve_threads(opts.threads), static_cast<unsigned>(n_off));
  auto worker = [&](unsigned tid) {
    std::vector<double> F(n0 * n1), value;
    std::vector<unsigned char> choice;
    for (std::size_t o = tid; o < n_off; o += nthreads) {
      const std::size_t s = shift_of(o);
      for (std::size_t j = 0; j < nr; ++j) {
        const std::vector<double>& t = tables[j];
        for (std::size_t k = 0; k < n0; ++k) {
          for (std::size_t l = 0; l < n1; ++l) {
            const std::size_t src = l + s;
            double c = src < n1 ? t[k * n1 + src] : t[k * n1 + src - n1];
            if (src >= n1 && odd) c = -c;
            F[k * n1 + l] = transfer(c, opts.positive_part);
          }
        }
        grid[o * nr + j] = dp_core(F, n0, n1, moves, nullptr, value, choice) * norm;
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < nthreads; ++t) pool.emplace_back(worker, t);
  worker(0);
  for (auto& th : pool) th.join();

  // Best grid rotation per offset. For a fixed path the functional is R cos((beta - beta*) / 2),
  // so a grid cell is within a factor cos(pi / nr) of its offset's optimum; offsets below that
  // factor times the best grid value cannot win and are not refined.
  std::vector<std::size_t> best_rot(n_off, 0);
  double top = -INFINITY;
  for (std::size_t o = 0; o < n_off; ++o) {
    for (std::size_t j = 1; j < nr; ++j)
      if (grid[o * nr + j] > grid[o * nr + best_rot[o]]) best_rot[o] = j;
    top = std::max(top, grid[o * nr + best_rot[o]]);
  }
  const double cut = top > 0.0 ? top * std::cos(kPi / static_cast<double>(nr)) : -INFINITY;
  std::vector<std::size_t> order;
  for (std::size_t o = 0; o < n_off; ++o)
    if (grid[o * nr + best_rot[o]] >= cut) order.push_back(o);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return grid[a * nr + best_rot[a]] > grid[b * nr + best_rot[b]];
  });
  const std::size_t n_cand = opts.refine_rotation ? order.size() : 1;

  std::vector<double> F, value;
  std::vector<unsigned char> choice;
  double best_value = -INFINITY, beta = 0.0;
  std::size_t shift = 0;
  RealVec a1s;
  for (std::size_t c = 0; c < n_cand; ++c) {
    const std::size_t o = order[c], j = best_rot[o];
    const RealVec cand = shifted_angles(alpha1, shift_of(o), rotation_index1);
    auto value_at = [&](double b) {
      fill_f(F, alpha0, cand, b, opts.positive_part);
      return dp_core(F, n0, n1, moves, nullptr, value, choice) * norm;
    };
    double v = grid[o * nr + j];
    double b = 2.0 * kTwoPi * static_cast<double>(j) / nr;
    if (opts.refine_rotation) b = refine_rotation(value_at, b, 2.0 * kTwoPi / nr, v);
    if (v > best_value + 1e-14) {
      best_value = v;
      beta = b;
      shift = shift_of(o);
      a1s = cand;
    }
  }

  MatchResult res;
  Corners corners;
  fill_f(F, alpha0, a1s, beta, opts.positive_part);
  res.U_value = dp_core(F, n0, n1, moves, &corners, value, choice) * norm;
  res.rotation = std::remainder(beta, 2.0 * kTwoPi);
  res.offset_segments = shift;
  res.map = make_map(corners, n0, n1, Topology::Closed, kTwoPi * static_cast<double>(shift) / n1);
  finish(res, n0, n1);
  return res;
}

MatchResult dp_match_closed(const PlaneCurve& c0, const PlaneCurve& c1, const MatchOptions& opts) {
  if (c0.topology != Topology::Closed || c1.topology != Topology::Closed)
    throw Error(ErrorKind::InvalidInput, "closed matching needs closed curves");
  check_sizes(opts.n0, opts.n1);
  const RealVec a0 = segment_angles(c0, opts.n0);
  const RealVec a1 = segment_angles(c1, opts.n1);
  const int i0 = turning_index(a0), i1 = turning_index(a1);
  if ((i0 - i1) % 2 != 0) throw Error(ErrorKind::ParityMismatch, "rotation indices differ in parity");
  return dp_match_closed_angles(a0, a1, i1, opts);
}

double path_functional(const RealVec& alpha0, const RealVec& alpha1, double rotation, const Corners& corners,
                       bool positive_part) {
  const std::size_t n0 = alpha0.size(), n1 = alpha1.size();
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < corners.size(); ++i) {
    const double k0 = static_cast<double>(corners[i].first), l0 = static_cast<double>(corners[i].second);
    const double a = static_cast<double>(corners[i + 1].first) - k0;
    const double b = static_cast<double>(corners[i + 1].second) - l0;
    if (a <= 0.0 || b <= 0.0) continue;
    // Parameter interval of the segment inside cell (k, l): max of entries, min of exits.
    for (std::size_t k = corners[i].first; k < corners[i + 1].first; ++k) {
      for (std::size_t l = corners[i].second; l < corners[i + 1].second; ++l) {
        const double lo = std::max((static_cast<double>(k) - k0) / a, (static_cast<double>(l) - l0) / b);
        const double hi = std::min((static_cast<double>(k) + 1 - k0) / a, (static_cast<double>(l) + 1 - l0) / b);
        if (hi <= lo) continue;
        const double c = std::cos(0.5 * (alpha0[k] - alpha1[l] - rotation));
        total += (positive_part ? std::max(0.0, c) : c) * (hi - lo) * std::sqrt(a * b);
      }
    }
  }
  return total / std::sqrt(static_cast<double>(n0 * n1));
}

double straight_target_map(const RealVec& alpha0, double u) {
  const std::size_t n = alpha0.size();
  const double h = kTwoPi / static_cast<double>(n);
  RealVec w(n);
  double total = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double c = std::max(std::cos(0.5 * alpha0[k]), 0.0);
    w[k] = c * c;
    total += w[k] * h;
  }
  double acc = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double a = h * static_cast<double>(k);
    if (u <= a + h) return kTwoPi * (acc + w[k] * std::max(0.0, u - a)) / total;
    acc += w[k] * h;
  }
  return kTwoPi;
}

}  // namespace shapegeo
