#include <Eigen/SparseCholesky>
#include <algorithm>
#include <cmath>
#include <random>

#include "operators.hpp"
#include "shapegeo/curvature.hpp"

namespace shapegeo {

struct LTopOperator::Impl {
  PlaneCurve curve;
  ArcData arc;
  RealVec potential;
  RealVec w;  // ds weights
  Eigen::SparseMatrix<double> stiffness;
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt;
  RealVec f;  // (L^T)^{-1} kappa
  double kform = 0.0;

  double avg(const RealVec& x) const {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += w[i] * x[i];
    return s / arc.length;
  }
  double avg_product(const RealVec& x, const RealVec& y) const {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += w[i] * x[i] * y[i];
    return s / arc.length;
  }
  RealVec solve(const RealVec& psi) const {
    if (psi.size() != w.size()) throw Error(ErrorKind::GridMismatch, "field size");
    Eigen::VectorXd rhs(psi.size());
    for (std::size_t i = 0; i < psi.size(); ++i) rhs[i] = w[i] * psi[i];
    const Eigen::VectorXd x = ldlt.solve(rhs);
    return RealVec(x.data(), x.data() + x.size());
  }
};

namespace {

std::shared_ptr<LTopOperator::Impl> make_impl(const PlaneCurve& curve, RealVec potential) {
  if (curve.topology != Topology::Closed) throw Error(ErrorKind::InvalidInput, "L^T needs a closed curve");
  auto impl = std::make_shared<LTopOperator::Impl>();
  impl->curve = curve;
  impl->arc = build_arc_data(curve);
  impl->potential = std::move(potential);
  impl->w = impl->arc.ds_weights();
  impl->stiffness = detail::closed_stiffness(impl->arc, &impl->potential);
  impl->ldlt.compute(impl->stiffness);
  if (impl->ldlt.info() != Eigen::Success) throw Error(ErrorKind::InvalidInput, "L^T factorization failed");
  return impl;
}

ComplexVec scaled(const ComplexVec& v, double s) {
  ComplexVec out = v;
  for (auto& x : out) x *= s;
  return out;
}

PlaneCurve scaled(const PlaneCurve& c, double s) {
  PlaneCurve out = c;
  for (auto& p : out.points) p *= s;
  return out;
}

RealVec ds_real(const ArcData& arc, const RealVec& x) {
  RealVec d = d_theta(x, arc.grid.topology);
  for (std::size_t i = 0; i < d.size(); ++i) d[i] /= arc.speed[i];
  return d;
}

RealVec normal_component(const ArcData& arc, const ComplexVec& d) {
  const ComplexVec n = arc.unit_normal();
  RealVec out(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) out[i] = (std::conj(n[i]) * d[i]).real();
  return out;
}

}  // namespace

std::size_t LTopOperator::size() const { return impl_->w.size(); }
const PlaneCurve& LTopOperator::curve() const { return impl_->curve; }
const ArcData& LTopOperator::arc() const { return impl_->arc; }
const RealVec& LTopOperator::potential() const { return impl_->potential; }

RealVec LTopOperator::apply(const RealVec& b) const {
  if (b.size() != size()) throw Error(ErrorKind::GridMismatch, "field size");
  const Eigen::Map<const Eigen::VectorXd> x(b.data(), static_cast<Eigen::Index>(b.size()));
  const Eigen::VectorXd y = impl_->stiffness * x;
  RealVec out(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) out[i] = y[i] / impl_->w[i];
  return out;
}

RealVec LTopOperator::apply_tilde(const RealVec& b) const {
  RealVec out = apply(b);
  const double m = impl_->avg_product(b, impl_->arc.curvature);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] -= m * impl_->arc.curvature[i];
  return out;
}

RealVec LTopOperator::solve(const RealVec& psi) const { return impl_->solve(psi); }

RealVec LTopOperator::solve_tilde(const RealVec& psi) const {
  RealVec x = impl_->solve(psi);
  const double m = impl_->avg_product(x, impl_->arc.curvature) / (1.0 - impl_->kform);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] += m * impl_->f[i];
  return x;
}

double LTopOperator::kappa_form() const { return impl_->kform; }

LTopOperator build_ltop(const PlaneCurve& curve) {
  const ArcData arc = build_arc_data(curve);
  const RealVec& k = arc.curvature;
  const auto [lo, hi] = std::minmax_element(k.begin(), k.end());
  const double kmax = std::max(std::abs(*lo), std::abs(*hi));
  if (*hi - *lo <= 1e-6 * kmax) throw Error(ErrorKind::CircleSingular, "constant curvature");
  RealVec pot(k.size());
  for (std::size_t i = 0; i < k.size(); ++i) pot[i] = k[i] * k[i];
  auto impl = make_impl(curve, std::move(pot));
  impl->f = impl->solve(impl->arc.curvature);
  impl->kform = impl->avg_product(impl->f, impl->arc.curvature);
  if (1.0 - impl->kform < 1e-8) throw Error(ErrorKind::CircleSingular, "rank-one correction is singular");
  return LTopOperator(std::move(impl));
}

LTopOperator build_l0(const PlaneCurve& curve) {
  auto impl = make_impl(curve, RealVec(curve.size(), 1.0));
  impl->f.assign(curve.size(), 0.0);
  return LTopOperator(std::move(impl));
}

double ltop_eigen_floor(const LTopOperator& op) {
  const std::size_t n = op.size();
  const RealVec w = op.arc().ds_weights();
  RealVec x(n, 1.0);
  for (std::size_t i = 0; i < n; ++i) x[i] += 1e-3 * std::cos(static_cast<double>(i));
  double lambda = 0.0;
  for (int it = 0; it < 2000; ++it) {
    // x <- (L^T)^{-1} x, normalized in the ds-weighted norm.
    RealVec y = op.solve(x);
    double nrm = 0.0;
    for (std::size_t i = 0; i < n; ++i) nrm += w[i] * y[i] * y[i];
    nrm = std::sqrt(nrm);
    for (auto& v : y) v /= nrm;
    const RealVec ly = op.apply(y);
    double q = 0.0;
    for (std::size_t i = 0; i < n; ++i) q += w[i] * y[i] * ly[i];
    x = std::move(y);
    if (it > 0 && std::abs(q - lambda) <= 1e-14 * std::abs(q)) return q;
    lambda = q;
  }
  return lambda;
}

RealVec bracket_psi(const ArcData& arc, const ComplexVec& h1, const ComplexVec& h2, bool subtract_mean_det) {
  const ComplexVec d1 = ds_operator(arc, h1, 1), d2 = ds_operator(arc, h2, 1);
  const RealVec a = normal_component(arc, d1), b = normal_component(arc, d2);
  const RealVec da = ds_real(arc, a), db = ds_real(arc, b);
  RealVec psi(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) psi[i] = a[i] * db[i] - b[i] * da[i];
  if (subtract_mean_det) {
    RealVec dets(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) dets[i] = (std::conj(d1[i]) * d2[i]).imag();
    const double m = ds_mean(arc, dets);
    for (std::size_t i = 0; i < a.size(); ++i) psi[i] -= m * arc.curvature[i];
  }
  return psi;
}

double oneill_correction(const PlaneCurve& curve, const ComplexVec& h1, const ComplexVec& h2, Quotient quotient) {
  if (h1.size() != curve.size() || h2.size() != curve.size())
    throw Error(ErrorKind::GridMismatch, "tangent field size");
  const double s = 1.0 / build_arc_data(curve).length;
  const LTopOperator op = build_ltop(scaled(curve, s));
  const ArcData& arc = op.arc();
  const RealVec psi = bracket_psi(arc, scaled(h1, s), scaled(h2, s), quotient == Quotient::Sim);
  const RealVec x = quotient == Quotient::Sim ? op.solve_tilde(psi) : op.solve(psi);
  RealVec prod(psi.size());
  for (std::size_t i = 0; i < psi.size(); ++i) prod[i] = psi[i] * x[i];
  return 0.375 * ds_integral(arc, prod);
}

double curvature_upper_bound(const PlaneCurve& curve, const ComplexVec& h2) {
  if (h2.size() != curve.size()) throw Error(ErrorKind::GridMismatch, "tangent field size");
  const ArcData arc0 = build_arc_data(curve);
  if (std::abs(metric_g(arc0, h2, h2) - 1.0) > 1e-6) throw Error(ErrorKind::NotOrthonormal, "h2 must be G-unit");
  const double s = kTwoPi / arc0.length;
  const LTopOperator op = build_ltop(scaled(curve, s));
  const ArcData& arc = op.arc();
  const RealVec a = normal_component(arc, ds_operator(arc, scaled(h2, s), 1));
  const RealVec da = ds_real(arc, a);
  double sup_a = 0.0, sup_da = 0.0, sup_k = 0.0;
  RealVec k2(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    sup_a = std::max(sup_a, std::abs(a[i]));
    sup_da = std::max(sup_da, std::abs(da[i]));
    k2[i] = arc.curvature[i] * arc.curvature[i];
    sup_k = std::max(sup_k, std::abs(1.0 - k2[i]));
  }
  const double mean_k2 = ds_mean(arc, k2);
  const double t = (sup_a + sup_da) / std::sqrt(2.0) + 2.0 * std::sqrt(mean_k2);
  return 2.0 + 3.0 * (1.0 + 3.0 * sup_k) * t * t / (2.0 * (1.0 - op.kappa_form()));
}

ComplexVec vertical_part(const LTopOperator& op, const ComplexVec& h) {
  const ArcData& arc = op.arc();
  const PlaneCurve& c = op.curve();
  if (h.size() != c.size()) throw Error(ErrorKind::GridMismatch, "tangent field size");
  const ComplexVec v = arc.unit_tangent();
  const ComplexVec d1 = ds_operator(arc, h, 1);
  const ComplexVec d2 = ds_operator(arc, h, 2);
  const RealVec hn = normal_component(arc, d1);
  RealVec hv(h.size()), psi(h.size());
  for (std::size_t i = 0; i < h.size(); ++i) hv[i] = (std::conj(v[i]) * d1[i]).real();
  const double mean_n = ds_mean(arc, hn);
  for (std::size_t i = 0; i < h.size(); ++i)
    psi[i] = -(std::conj(v[i]) * d2[i]).real() - mean_n * arc.curvature[i];
  const RealVec b = op.solve_tilde(psi);
  RealVec bk(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) bk[i] = b[i] * arc.curvature[i];
  const double alpha = mean_n - ds_mean(arc, bk);
  const double beta = ds_mean(arc, hv);
  ComplexVec out(h.size());
  for (std::size_t i = 0; i < h.size(); ++i) out[i] = b[i] * v[i] + Complex(beta, alpha) * c.points[i];
  return out;
}

ComplexVec make_horizontal(const LTopOperator& op, const ComplexVec& h) {
  const ComplexVec vert = vertical_part(op, h);
  ComplexVec out(h.size());
  for (std::size_t i = 0; i < h.size(); ++i) out[i] = h[i] - vert[i];
  return remove_ds_mean(op.arc(), out);
}

std::pair<ComplexVec, ComplexVec> orthonormalize_g(const ArcData& arc, ComplexVec h1, ComplexVec h2) {
  const double n1 = std::sqrt(metric_g(arc, h1, h1));
  if (!(n1 > 1e-150)) throw Error(ErrorKind::DegeneratePlane, "first field vanishes");
  for (auto& x : h1) x /= n1;
  const double p = metric_g(arc, h1, h2);
  const double n2_before = std::sqrt(metric_g(arc, h2, h2));
  for (std::size_t i = 0; i < h2.size(); ++i) h2[i] -= p * h1[i];
  const double n2 = std::sqrt(std::max(0.0, metric_g(arc, h2, h2)));
  if (!(n2 > 1e-10 * n2_before)) throw Error(ErrorKind::DegeneratePlane, "fields are dependent");
  for (auto& x : h2) x /= n2;
  return {std::move(h1), std::move(h2)};
}

std::pair<ComplexVec, ComplexVec> generated_horizontal_pair(const PlaneCurve& curve, unsigned seed, int modes) {
  const LTopOperator op = build_ltop(curve);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  const Grid g = curve.grid();
  auto field = [&] {
    ComplexVec h(curve.size(), 0.0);
    for (int k = 1; k <= modes; ++k) {
      const Complex a(normal(rng), normal(rng)), b(normal(rng), normal(rng));
      const double damp = 1.0 / (k * k);
      for (std::size_t i = 0; i < h.size(); ++i)
        h[i] += damp * (a * std::cos(k * g.theta(i)) + b * std::sin(k * g.theta(i)));
    }
    return make_horizontal(op, h);
  };
  ComplexVec h1 = field();
  ComplexVec h2 = field();
  return orthonormalize_g(op.arc(), std::move(h1), std::move(h2));
}

}  // namespace shapegeo
