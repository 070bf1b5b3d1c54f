#include "plc/dual_group.hpp"

#include <cmath>

namespace plc {

DualGroupElement::DualGroupElement(CMat nilpotent, RVec cartan_chart, CartanForm u, double tau)
    : nilpotent_(std::move(nilpotent)), chart_(std::move(cartan_chart)), u_(std::move(u)) {
  const int n = static_cast<int>(nilpotent_.rows());
  if (chart_.size() != n - 1) throw DimensionMismatch("DualGroupElement: chart size");
  if (u_.group_dim() != n) throw DimensionMismatch("DualGroupElement: CartanForm rank");
  if (!is_unit_upper_triangular(nilpotent_, tau))
    throw Error("DualGroupElement: N not unit upper triangular");
  RVec r = cartan_full(chart_, n);
  RVec s = u_.apply_coords(r);
  CMat d = CMat::Zero(n, n);
  for (int k = 0; k < n; ++k) d(k, k) = std::exp(Complex(-r(k), -s(k)));
  embedding_ = nilpotent_ * d;
}

DualGroupElement DualGroupElement::identity(int n, CartanForm u) {
  return DualGroupElement(CMat::Identity(n, n), RVec::Zero(n - 1), std::move(u));
}

CMat f_map(const DualGroupElement& a) { return a.embedding() * a.embedding().adjoint(); }

DualGroupElement f_inverse(const CMat& p, const CartanForm& u, double tau) {
  if (!is_hermitian(p, 1e2 * tau)) throw NotInSG("f_inverse: not Hermitian");
  if (std::abs(p.determinant() - 1.0) > 1e4 * tau) throw NotInSG("f_inverse: determinant not 1");
  UduFactors f;
  try {
    f = udu_factor(p, tau);
  } catch (const NotPositiveDefinite&) {
    throw NotInSG("f_inverse: not positive definite");
  }
  RVec r = -0.5 * f.diagonal.array().log();
  return DualGroupElement(f.nilpotent, r.head(r.size() - 1), u, 1e2 * tau);
}

CMat j_map(const CoalgebraVector& a, double t) {
  CMat h = Complex(0, 2.0 * t) * a.alpha();
  return herm_exp(h, 1e-8);
}

DualGroupElement e_map(const CoalgebraVector& a, const PoissonParams& params) {
  if (params.family != Family::generic || std::abs(params.t) < tol::t_min)
    throw ParamOutOfRange("e_map: generic family with |t| >= t_min required");
  return f_inverse(j_map(a, params.t), params.u);
}

CoalgebraVector e_inverse(const DualGroupElement& a, const PoissonParams& params) {
  if (params.family != Family::generic || std::abs(params.t) < tol::t_min)
    throw ParamOutOfRange("e_inverse: generic family with |t| >= t_min required");
  CMat h = herm_log(f_map(a), 1e-8);
  return CoalgebraVector(h / Complex(0, 2.0 * params.t), 1e-8);
}

DressResult dress(const CMat& g, const DualGroupElement& a, double tau) {
  if (!is_unitary(g, 1e2 * tau) || !is_unit_determinant(g, 1e2 * tau))
    throw NotUnitary("dress: g not in SU(n)");
  CMat m = g * a.embedding();
  DualGroupElement dressed = f_inverse(m * m.adjoint(), a.cartan_form(), tau);
  CMat gp = dressed.embedding().partialPivLu().solve(m);
  if (!is_unitary(gp, 1e3 * tau))
    throw NotUnitary("dress: compensator drifted off the unitary group");
  return DressResult{std::move(dressed), std::move(gp)};
}

CMat dressing_vector(const CMat& eps, const DualGroupElement& a) {
  const int n = a.dim();
  std::vector<CMat> dual = dual_basis(n, a.cartan_form());
  std::vector<CMat> combined = dual;
  CMat inv = a.embedding().inverse();
  for (const CMat& b : su_basis(n)) combined.push_back(a.embedding() * b * inv);
  RVec c = real_expand(combined, eps, 1e-8);
  CMat xi = CMat::Zero(n, n);
  for (size_t i = 0; i < dual.size(); ++i) xi += c(static_cast<Eigen::Index>(i)) * dual[i];
  return xi;
}

double mc_pair(const DualGroupElement&, const CMat& tangent, const CMat& eps) {
  return im_killing(tangent, eps);
}

CMat e_push(const CoalgebraVector& a, const CoalgebraVector& x, const PoissonParams& params,
            double step) {
  return fd_pushforward_mat(
      [&](double s) { return e_map(CoalgebraVector(a.alpha() + s * x.alpha(), 1e-6), params).embedding(); },
      step);
}

// ---- t=0 family ----

CMat SpecialChart::body() const {
  const Eigen::Index n = h_coords.size();
  CMat b = upper;
  for (Eigen::Index k = 0; k < n; ++k) b(k, k) = -h_coords(k);
  return b;
}

SpecialChart SpecialChart::from_body(const CMat& body, double tau) {
  const Eigen::Index n = body.rows();
  double lower = 0.0;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < i; ++j) lower += std::norm(body(i, j));
  if (std::sqrt(lower) > tau)
    throw DecompositionFailed("SpecialChart: lower-triangular mass above tolerance");
  double diag_imag = 0.0;
  for (Eigen::Index k = 0; k < n; ++k) diag_imag += std::norm(body(k, k).imag());
  if (std::sqrt(diag_imag) > tau)
    throw DecompositionFailed("SpecialChart: diagonal of ih not real");
  SpecialChart c;
  c.h_coords = RVec(n);
  for (Eigen::Index k = 0; k < n; ++k) c.h_coords(k) = -body(k, k).real();
  if (std::abs(c.h_coords.sum()) > tau)
    throw DecompositionFailed("SpecialChart: Cartan part not trace-free");
  c.upper = body.triangularView<Eigen::StrictlyUpper>();
  return c;
}

SpecialChart SpecialChart::zero(int n) {
  return SpecialChart{RVec::Zero(n), CMat::Zero(n, n)};
}

namespace {
CMat torus_tag_for(const CartanForm& w, const RVec& h_coords) {
  RVec s = w.apply_coords(h_coords);
  const Eigen::Index n = h_coords.size();
  CMat tag = CMat::Zero(n, n);
  for (Eigen::Index k = 0; k < n; ++k) tag(k, k) = std::exp(Complex(0.0, -s(k)));
  return tag;
}
}  // namespace

SpecialDualElement e_w_map(const CMat& body, const CartanForm& w, double tau) {
  SpecialChart c = SpecialChart::from_body(body, tau);
  if (w.group_dim() != body.rows()) throw DimensionMismatch("e_w_map: CartanForm rank");
  return SpecialDualElement{c, torus_tag_for(w, c.h_coords), w};
}

CMat e_w_inverse(const SpecialDualElement& a) { return a.point.body(); }

SpecialDualElement special_multiply(const SpecialDualElement& a, const SpecialDualElement& b) {
  // (x1, T1)(x2, T2) = (x1 + T1^{-1} x2 T1, T1 T2)
  CMat x = a.point.body() + a.torus_tag.inverse() * b.point.body() * a.torus_tag;
  SpecialChart c = SpecialChart::from_body(x, 1e-9);
  return SpecialDualElement{c, a.torus_tag * b.torus_tag, a.w};
}

std::pair<CMat, CMat> mc_form_special(const SpecialDualElement& a, const SpecialChart& tangent) {
  RVec s = a.w.apply_coords(tangent.h_coords);
  CMat wdh = cartan_matrix(s);  // w(dh) = i diag(s), an element of the Cartan of g
  CMat first = tangent.body() - (wdh * a.point.upper - a.point.upper * wdh);
  return {first, -wdh};
}

}  // namespace plc
