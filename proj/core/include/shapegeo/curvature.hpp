#pragma once

#include <memory>

#include "shapegeo/lift.hpp"

namespace shapegeo {

/// Two tangent vectors Y1 = (de1, df1), Y2 = (de2, df2) at a lift pair.
struct TangentPair {
  LiftPair base;
  LiftDirection y1, y2;
};

/// Lowered-index Grassmann curvature
/// (<de1,df2> - <de2,df1>)^2 + 1/2 ||de1^de2 + df1^df2||^2, the wedge norm as a grid double sum.
/// Checks orthonormality and horizontality (de, df orthogonal to e and f) within tol.
double curvature_grassmann(const TangentPair& tp, double tol = 1e-6);

/// Stiefel curvature, second closed form: 1/2 ||wedge||^2 - 1/2 (<de1,df2> - <de2,df1>)^2.
double curvature_stiefel(const TangentPair& tp, double tol = 1e-6);
/// First closed form (norms, inner products and the symmetric cross term).
double curvature_stiefel_expanded(const TangentPair& tp);

/// Curvature of the product R+ x St carrying (lambda_i, Y_i), with the product norm
/// lambda^2 / (2 ell^2) + ||de||^2 + ||df||^2. Throws DegeneratePlane for a vanishing area.
double unscaled_stiefel_curvature(const TangentPair& tp, double lambda1, double lambda2, double ell = 1.0);

/// Immersion-level curvatures. h1, h2 are tangent fields at the curve, G-orthonormal when
/// require_orthonormal is set. Evaluated after rescaling the curve to unit length.
double curvature_immersion(const PlaneCurve& curve, const ComplexVec& h1, const ComplexVec& h2,
                           bool require_orthonormal = true);
/// Imm/(transl, scal) form with the leading -(int det)^2 term.
double curvature_immersion_transl_scale(const PlaneCurve& curve, const ComplexVec& h1, const ComplexVec& h2,
                                        bool require_orthonormal = true);

/// L^T b = -D_s^2 b + kappa^2 b on a closed curve, with the rank-one corrected inverse of
/// L~^T b = L^T b - <b kappa> kappa. Averages are ds-averages. Immutable and shareable.
class LTopOperator {
 public:
  std::size_t size() const;
  const PlaneCurve& curve() const;
  const ArcData& arc() const;
  const RealVec& potential() const;

  RealVec apply(const RealVec& b) const;        ///< L^T b
  RealVec apply_tilde(const RealVec& b) const;  ///< L~^T b
  RealVec solve(const RealVec& psi) const;      ///< (L^T)^{-1} psi
  RealVec solve_tilde(const RealVec& psi) const;///< (L~^T)^{-1} psi
  /// <kappa (L^T)^{-1} kappa>; strictly below 1 off the circle.
  double kappa_form() const;

  struct Impl;

 private:
  explicit LTopOperator(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
  friend LTopOperator build_ltop(const PlaneCurve& curve);
  friend LTopOperator build_l0(const PlaneCurve& curve);
};

/// Throws CircleSingular when kappa is constant within 1e-6 max|kappa| or the rank-one
/// denominator 1 - <kappa (L^T)^{-1} kappa> is below 1e-8.
LTopOperator build_ltop(const PlaneCurve& curve);
/// L0 = -D_s^2 + 1 on the same grid. solve_tilde and kappa_form are not meaningful for it.
LTopOperator build_l0(const PlaneCurve& curve);

/// Smallest eigenvalue of the discrete operator (generalized problem K x = lambda W x with
/// W the ds weights), by inverse iteration.
double ltop_eigen_floor(const LTopOperator& op);

enum class Quotient { Sim, TranslScale };

/// psi = W_s(D_s h1 . n, D_s h2 . n) - <det(D_s h1, D_s h2)> kappa, W_s(a, b) = a D_s b - b D_s a.
RealVec bracket_psi(const ArcData& arc, const ComplexVec& h1, const ComplexVec& h2, bool subtract_mean_det = true);

/// O'Neill correction for G-orthonormal horizontal h1, h2 (unit-length normalization):
/// 3/8 int psi (L~^T)^{-1} psi ds for Sim, 3/8 int W_s (L^T)^{-1} W_s ds for TranslScale.
double oneill_correction(const PlaneCurve& curve, const ComplexVec& h1, const ComplexVec& h2,
                         Quotient quotient = Quotient::Sim);

/// Upper bound for the curvature on the shape space of the plane spanned with h2,
/// evaluated at length 2 pi. h2 must be G-unit.
double curvature_upper_bound(const PlaneCurve& curve, const ComplexVec& h2);

/// Vertical component b v + i alpha c + beta c of h for the similarity quotient
/// (reparametrizations, rotations, scalings), with b = (L~^T)^{-1} psi(h).
ComplexVec vertical_part(const LTopOperator& op, const ComplexVec& h);
/// h minus its vertical part, translated to zero ds-mean.
ComplexVec make_horizontal(const LTopOperator& op, const ComplexVec& h);
/// Gram-Schmidt in G; throws DegeneratePlane if h2 is dependent on h1.
std::pair<ComplexVec, ComplexVec> orthonormalize_g(const ArcData& arc, ComplexVec h1, ComplexVec h2);

/// Two band-limited fields (Fourier modes 1..modes, fixed seed), made horizontal and
/// G-orthonormal at a closed non-circular curve.
std::pair<ComplexVec, ComplexVec> generated_horizontal_pair(const PlaneCurve& curve, unsigned seed, int modes = 4);

/// Lift-level directions of tangent fields at a unit-length curve (pullback of Phi).
TangentPair tangent_pair_from_fields(const PlaneCurve& curve, const ComplexVec& h1, const ComplexVec& h2);

struct CurvatureReport {
  double k_gr = 0.0;
  double k_st = 0.0;
  double k_imm_sim = 0.0;
  double rho = 0.0;
  double k_b_sim = 0.0;
  double upper_bound = 0.0;
};

/// All curvature quantities for G-orthonormal horizontal fields at a closed curve.
CurvatureReport curvature_report(const PlaneCurve& curve, const ComplexVec& h1, const ComplexVec& h2);

}  // namespace shapegeo
