#pragma once

#include <string>

#include "shapegeo/curves.hpp"

namespace shapegeo {

/// A point of a geodesic in Imm/(transl): based curve (c(0) = 0), velocity and cached invariants.
struct GeodesicState {
  PlaneCurve c;
  ComplexVec u;  ///< velocity c_t
  double t = 0.0;
  double energy = 0.0;   ///< ||c_t||^2 in G
  double angular = 0.0;
  double scaling = 0.0;
  RealVec reparam;       ///< reparametrization momentum, node-wise
};

/// Builds a state and computes its invariants. Throws DegenerateSpeed off the immersions.
GeodesicState make_state(PlaneCurve c, ComplexVec u, double t = 0.0);

/// Acceleration c_tt of the geodesic through (c, c_t).
ComplexVec geodesic_rhs(const PlaneCurve& c, const ComplexVec& u);
ComplexVec geodesic_rhs(const GeodesicState& state);

struct Momenta {
  RealVec reparam_field;  ///< (-1/l) <c_theta, D_s^2 c_t> |c_theta|
  double angular = 0.0;   ///< (1/l) int kappa <v, c_t> ds
  double scaling = 0.0;   ///< (-1/l) int <c, D_s^2 c_t> ds
};
Momenta momenta(const PlaneCurve& c, const ComplexVec& u);
Momenta momenta(const GeodesicState& state);

struct IntegrateOptions {
  double eps_speed = -1.0;  ///< immersion threshold shared with build_arc_data
};

struct Trajectory {
  std::vector<GeodesicState> states;
  bool bad_set_reached = false;
  double bad_set_time = 0.0;  ///< time of the last accepted state before the event
  std::string reason;
};

/// Classical RK4 on (c, c_t) with fixed step T / steps. The data are translated so that
/// c(0) = 0 and c_t(0) = 0. Stops at the bad set: speed below eps_speed, a jump of the
/// turning profile by more than pi between steps, or a degenerate stage.
Trajectory integrate_geodesic(const PlaneCurve& c0, const ComplexVec& v0, double T, std::size_t steps,
                              const IntegrateOptions& opts = {});

/// Rate of the normal momentum a for horizontal geodesics (u = -D_s^2 c_t = a n):
/// a_t = -a (w - <w>) + kappa / 2 (|D_s c_t|^2 + <|D_s c_t|^2>), w = <D_s c_t, v>.
RealVec horizontal_geodesic_rhs_scalar(const PlaneCurve& c, const ComplexVec& u, const RealVec& a);
RealVec horizontal_geodesic_rhs_scalar(const GeodesicState& state, const RealVec& a);

/// Velocity (-D_s^2)^{-1}(a n), based at c(0).
ComplexVec velocity_from_normal_momentum(const PlaneCurve& c, const RealVec& a);
/// Normal component <-D_s^2 c_t, n>.
RealVec normal_momentum(const PlaneCurve& c, const ComplexVec& u);

/// Rate of the momentum u = -D_s^2 c_t in compact form:
/// u_t = -(w - <w>) u + 1/2 (E + |D_s c_t|^2) kappa n - <u, D_s c_t> v, E = <|D_s c_t|^2>.
ComplexVec momentum_rate(const PlaneCurve& c, const ComplexVec& u);

/// RK4 on (c, a) with c_t recovered from a. Closed curves only.
Trajectory integrate_horizontal_scalar(const PlaneCurve& c0, const RealVec& a0, double T, std::size_t steps,
                                       const IntegrateOptions& opts = {});

}  // namespace shapegeo
