#pragma once

#include <array>

#include "shapegeo/lift.hpp"

namespace shapegeo {

/// Great circle on the sphere ||e||^2 + ||f||^2 = 2.
struct GreatCirclePath {
  LiftPair p0, p1;
  double D = 0.0;  ///< sphere angle in [0, pi]

  LiftPair evaluate(double t) const;
};

GreatCirclePath great_circle(const LiftPair& p0, const LiftPair& p1);

double distance_open(const PlaneCurve& c0, const PlaneCurve& c1, bool mod_rotation);
/// Same distance on already lifted pairs.
double distance_lifted(const LiftPair& p0, const LiftPair& p1, bool mod_rotation);

/// m[i][j] = <b0_i, b1_j> with b = (e, f); the half sums are
/// C_pm = (m11 -+ m22) / 2 and S_pm = (m21 +- m12) / 2.
struct ProjectionMatrix {
  std::array<std::array<double, 2>, 2> m{};
  double c_plus = 0.0, c_minus = 0.0, s_plus = 0.0, s_minus = 0.0;
};

ProjectionMatrix projection_matrix(const PlaneCurve& c0, const PlaneCurve& c1);
ProjectionMatrix projection_matrix(const LiftPair& p0, const LiftPair& p1);
ProjectionMatrix make_projection_matrix(double a, double b, double c, double d);

/// Singular values from the closed form sqrt(C-^2 + S-^2) +- sqrt(C+^2 + S+^2).
/// sv_small is negative when the orientations of the two planes disagree.
std::pair<double, double> jordan_angles(const ProjectionMatrix& m);

struct JordanFrame {
  LiftPair e0, e1;  ///< aligned bases stored as pairs (e~, f~)
  double psi_e = 0.0, psi_f = 0.0;
  double beta0 = 0.0, beta1 = 0.0;  ///< reported in (-pi, pi]
  double lambda_e = 1.0, lambda_f = 1.0;
  bool degenerate_plus = false;   ///< C+ = S+ = 0: beta0 + beta1 is arbitrary, set to 0
  bool degenerate_minus = false;  ///< C- = S- = 0: beta0 - beta1 is arbitrary, set to 0
};

/// With strict set, a degenerate sum or difference raises DegenerateAlignment.
JordanFrame align_rotations(const PlaneCurve& c0, const PlaneCurve& c1, bool strict = false);
JordanFrame align_frames(const LiftPair& p0, const LiftPair& p1, bool strict = false);

double distance_closed_mod_rot(const PlaneCurve& c0, const PlaneCurve& c1);
double distance_grassmann(const LiftPair& p0, const LiftPair& p1);

struct NeretinPath {
  JordanFrame frame;

  LiftPair evaluate(double t) const;
  double length() const;
  /// d/dt at t = 0.
  LiftDirection initial_velocity() const;
};

NeretinPath neretin_path(const JordanFrame& frame);

/// Largest of |<e,de>|, |<f,df>|, |<e,df> + <f,de>|.
double stiefel_tangency_defect(const LiftPair& base, const LiftDirection& dir);
/// Pointwise W_theta(e, de) + W_theta(f, df). Throws NotTangent above 1e-6.
RealVec horizontality_residual(const LiftPair& base, const LiftDirection& dir);
/// -<f, de> + <e, df>, zero for directions horizontal to rotations.
double rotation_horizontality(const LiftPair& base, const LiftDirection& dir);

}  // namespace shapegeo
