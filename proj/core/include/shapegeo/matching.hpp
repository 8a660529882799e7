#pragma once

#include <utility>

#include "shapegeo/geodesy.hpp"

namespace shapegeo {

/// Nondecreasing piecewise-linear relation between u (first curve) and phi (second curve).
/// Horizontal pieces (phi constant) are flats; vertical pieces (u constant) are jumps.
struct MonotoneMap {
  std::vector<std::pair<double, double>> breakpoints;
  double offset = 0.0;  ///< phi origin on the second curve (closed case)
  Topology topology = Topology::Open;

  /// Largest phi related to u.
  double evaluate(double u) const;
  /// Largest u related to phi.
  double inverse(double phi) const;

  struct Summary {
    std::size_t flat_segments = 0;
    double flat_measure = 0.0;  ///< total u-length mapped to a single phi
    std::size_t jump_segments = 0;
    double jump_measure = 0.0;  ///< total phi-length attained at a single u
  };
  Summary summary(double tol = 1e-12) const;
};

struct MatchOptions {
  bool mod_rotation = false;
  std::size_t n_rot = 64;
  bool refine_rotation = true;
  std::size_t n0 = 128, n1 = 128;  ///< segment counts
  /// Largest coordinate of a DP move (a, b); moves are (1,0), (0,1) and coprime pairs up to it.
  std::size_t window = 6;
  /// Use F = max(0, cos) (the default) or the plain cosine.
  bool positive_part = true;
  std::size_t n_offsets = 0;  ///< closed search; 0 means one per segment
  unsigned threads = 0;       ///< 0 reads SHAPEGEO_THREADS or the hardware concurrency
};

struct MatchResult {
  MonotoneMap map;
  double rotation = 0.0;
  double U_value = 0.0;
  double lower_bound_distance = 0.0;
  std::size_t n0 = 0, n1 = 0;
  std::size_t offset_segments = 0;  ///< cyclic shift of the second curve's segments
};

/// Piecewise-constant tangent angles of the arc-length resampled curve: the angle of each
/// chord between consecutive resampled nodes, continuously lifted.
RealVec segment_angles(const PlaneCurve& curve, std::size_t segments);

/// DP over given segment angles (uniform segments on both sides).
MatchResult dp_match_angles(const RealVec& alpha0, const RealVec& alpha1, const MatchOptions& opts);

MatchResult dp_match(const PlaneCurve& c0, const PlaneCurve& c1, const MatchOptions& opts);

/// Closed curves: searches cyclic shifts of the second curve and rotations.
MatchResult dp_match_closed_angles(const RealVec& alpha0, const RealVec& alpha1, int rotation_index1,
                                   const MatchOptions& opts);
MatchResult dp_match_closed(const PlaneCurve& c0, const PlaneCurve& c1, const MatchOptions& opts);

/// The functional value of a given straight-line path through the uniform cell grid.
/// Used by tests as an independent evaluation of move gains.
double path_functional(const RealVec& alpha0, const RealVec& alpha1, double rotation,
                       const std::vector<std::pair<std::size_t, std::size_t>>& corners, bool positive_part = true);

/// Closed-form optimal map for a straight target (alpha1 = 0), sampled at u.
double straight_target_map(const RealVec& alpha0, double u);

struct BoundResult {
  NeretinPath path;
  double upper = 0.0;
  double lower = 0.0;          ///< D' from the match
  double lower_scaled = 0.0;   ///< sqrt(2) D', the same bound in the Grassmann scale
  double lost_mass = 0.0;      ///< fraction of the lift mass dropped by flats
  bool degenerate = false;     ///< lost_mass > 0.5
  LiftPair reparametrized;     ///< orthonormalized lift of c0 composed with the inverse map
};

/// Reparametrizes c0 by the matched map, aligns it with c1 and returns the Neretin path
/// between the two planes. Both curves are resampled to n nodes.
BoundResult upper_bound_pipeline(const PlaneCurve& c0, const PlaneCurve& c1, const MatchResult& match,
                                 std::size_t n = 256);

unsigned resolve_threads(unsigned requested);

}  // namespace shapegeo
