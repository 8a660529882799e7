#pragma once

#include "shapegeo/common.hpp"

namespace shapegeo {

/// Discretized plane curve sampled at a uniform theta grid.
struct PlaneCurve {
  ComplexVec points;
  Topology topology = Topology::Closed;
  bool base_point_fixed = false;

  PlaneCurve() = default;
  /// Throws InvalidInput for fewer than 8 samples.
  PlaneCurve(ComplexVec pts, Topology topo, bool based = false);

  std::size_t size() const { return points.size(); }
  Grid grid() const { return Grid{points.size(), topology}; }
};

/// Arc-length geometry of a curve. All fields are node-wise.
struct ArcData {
  Grid grid;
  RealVec speed;          ///< |c_theta|
  double length = 0.0;    ///< trapezoid quadrature of speed
  RealVec tangent_angle;  ///< continuous lift of arg(c_theta)
  RealVec curvature;      ///< det(c_theta, c_thetatheta) / |c_theta|^3
  int rotation_index = 0; ///< closed curves only

  const RealVec& r() const { return speed; }
  /// ds quadrature weights: speed times the theta trapezoid weights.
  RealVec ds_weights() const;
  ComplexVec unit_tangent() const;
  ComplexVec unit_normal() const;
};

/// Default immersion threshold 1e-12 * length / N.
ArcData build_arc_data(const PlaneCurve& curve, double eps_speed = -1.0);

/// Centered first derivative in theta (one-sided second order at open ends).
ComplexVec d_theta(const ComplexVec& field, Topology topology);
RealVec d_theta(const RealVec& field, Topology topology);

PlaneCurve resample_by_arclength(const PlaneCurve& curve, std::size_t n);

enum class NormalizeFix { Translation, Scale, Both };
PlaneCurve normalize(const PlaneCurve& curve, NormalizeFix fix = NormalizeFix::Both);

/// D_s (order 1), D_s^2 (order 2), D_s^-1 (order -1) and -D_s^-2 (order -2).
///
/// D_s^2 is the compact three-point stencil, self-adjoint for the ds weights.
/// On closed curves the inverse orders require zero ds-mean input and return the
/// zero ds-mean solution. On open curves they integrate from the left endpoint.
ComplexVec ds_operator(const ArcData& arc, const ComplexVec& field, int order);

/// Staggered first differences (u_{i+1} - u_i) / (ds_{i+1/2}) on a closed grid,
/// with their half-node ds weights. Pairs exactly with the compact D_s^2.
ComplexVec ds_half(const ArcData& arc, const ComplexVec& field, RealVec* half_weights = nullptr);

Complex ds_integral(const ArcData& arc, const ComplexVec& field);
double ds_integral(const ArcData& arc, const RealVec& field);
Complex ds_mean(const ArcData& arc, const ComplexVec& field);
double ds_mean(const ArcData& arc, const RealVec& field);
/// Metric on curves modulo translations, G_c(h,k) = (1/(2l)) int <D_s h, D_s k> ds.
/// The factor 1/2 makes the square-root lift an isometry onto pairs with the plain
/// L2 metric ||de||^2 + ||df||^2.
double metric_g(const ArcData& arc, const ComplexVec& h, const ComplexVec& k);

/// Subtracts the ds-mean (closed curves); returns the field unchanged for open curves.
ComplexVec remove_ds_mean(const ArcData& arc, const ComplexVec& field);

}  // namespace shapegeo
