#pragma once

#include <utility>

#include "shapegeo/curves.hpp"

namespace shapegeo {

enum class Parity { OpenFree, EvenPeriodic, OddAntiperiodic };

const char* parity_name(Parity p);
Parity parity_from_name(const std::string& name);

/// Sampled pair (e, f) with (e + i f)^2 / 2 = c'. Odd pairs change sign across the seam.
struct LiftPair {
  Grid grid;
  RealVec e, f;
  Parity parity = Parity::OpenFree;

  std::size_t size() const { return e.size(); }
  double norm_e2() const { return dot(e, e, grid); }
  double norm_f2() const { return dot(f, f, grid); }
  double inner_ef() const { return dot(e, f, grid); }
  ComplexVec z() const;
  LiftPair operator-() const;
};

/// Tangent vector (de, df) to the space of pairs.
struct LiftDirection {
  RealVec de, df;
};

struct ZeroSetReport {
  std::vector<std::size_t> zero_nodes;
  double min_value = 0.0;
  bool crosses_bad_set = false;
};

LiftPair make_lift_pair(const Grid& grid, RealVec e, RealVec f, Parity parity);

LiftPair lift_curve(const PlaneCurve& curve);
PlaneCurve apply_phi(const LiftPair& pair);
/// Default threshold is 1e-6 * max(e^2 + f^2).
ZeroSetReport zero_set(const LiftPair& pair, double eps = -1.0);

/// lhs = G_c(dc, dc) computed on the curve side; rhs = ||de||^2 + ||df||^2 with (de, df)
/// the derivative of the discrete lift map along dc.
std::pair<double, double> verify_isometry(const PlaneCurve& curve, const ComplexVec& perturbation);

/// Tangent map of Phi: dc(theta) = int_0^theta (e + i f)(de + i df).
ComplexVec pushforward(const LiftPair& base, const LiftDirection& dir);
/// Inverse of the tangent map: de + i df = conj(e + i f) D_s(dc) / 2.
LiftDirection pullback(const PlaneCurve& curve, const ComplexVec& dc);

/// Parity-aware centered theta derivative of a lift field.
RealVec lift_d_theta(const RealVec& field, Parity parity);
/// W_theta(a, b) = a b_theta - b a_theta.
RealVec wronskian_theta(const RealVec& a, const RealVec& b, Parity parity);

/// Speed 1/2 (e^2 + f^2) and curvature 4 W_theta(e, f) / (e^2 + f^2)^2 read off the lift.
RealVec speed_from_lift(const LiftPair& pair);
RealVec curvature_from_lift(const LiftPair& pair);

/// Rotation index of Phi(pair) from the winding of e + i f, closing the seam by parity.
int rotation_index_from_lift(const LiftPair& pair);

/// The family e + i f = (x + i s) / sqrt(C) on x in [-pi, pi], C = 2 pi^3 / 3 + 2 pi s^2.
/// At s = 0 the image has a double zero of velocity at x = 0. n must be odd.
LiftPair genbifurc_pair(double s, std::size_t n);

}  // namespace shapegeo
