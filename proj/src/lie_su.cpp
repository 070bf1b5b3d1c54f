#include "plc/lie_su.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

namespace plc {

CoalgebraVector::CoalgebraVector(CMat alpha, double tau) : alpha_(std::move(alpha)) {
  if (alpha_.rows() != alpha_.cols()) throw DimensionMismatch("CoalgebraVector: square matrix required");
  if (!is_finite(alpha_)) throw Error("CoalgebraVector: non-finite entries");
  if (!is_anti_hermitian(alpha_, tau)) throw Error("CoalgebraVector: not anti-Hermitian");
  if (!is_traceless(alpha_, tau)) throw Error("CoalgebraVector: not traceless");
}

CoalgebraVector CoalgebraVector::zero(int n) { return CoalgebraVector(CMat::Zero(n, n)); }

CartanForm::CartanForm(const RMat& m) {
  if (m.rows() != m.cols()) throw DimensionMismatch("CartanForm: square matrix required");
  form_ = 0.5 * (m - m.transpose());
  discarded_ = 0.5 * (m + m.transpose()).norm();
}

CartanForm CartanForm::zero(int rank) { return CartanForm(RMat::Zero(rank, rank)); }

double CartanForm::form_value(const RVec& a, const RVec& b) const {
  if (a.size() != rank() || b.size() != rank())
    throw DimensionMismatch("CartanForm::form_value: chart vector size");
  if (form_.size() == 0) return 0.0;
  return a.dot(form_ * b);
}

RVec CartanForm::apply_coords(const RVec& r_full) const {
  const int n = group_dim();
  if (r_full.size() != n) throw DimensionMismatch("CartanForm::apply_coords: size");
  if (form_.size() == 0) return RVec::Zero(n);
  const int r = rank();
  RMat ginv = RMat::Identity(r, r) - RMat::Ones(r, r) / n;
  RVec chart = (1.0 / (2.0 * n)) * (ginv * (form_ * r_full.head(r)));
  return cartan_full(chart, n);
}

CMat CartanForm::apply(const CMat& h, double tau) const {
  RVec r = cartan_coords(h, tau);
  return cartan_matrix(apply_coords(r));
}

PoissonParams PoissonParams::generic(double t, CartanForm u) {
  if (std::abs(t) < tol::t_min)
    throw ParamOutOfRange("PoissonParams: |t| below t_min for the generic family");
  PoissonParams p;
  p.family = Family::generic;
  p.t = t;
  p.u = std::move(u);
  return p;
}

PoissonParams PoissonParams::special(CartanForm w) {
  PoissonParams p;
  p.family = Family::special;
  p.t = 0.0;
  p.u = std::move(w);
  return p;
}

RVec cartan_full(const RVec& chart, int n) {
  if (chart.size() != n - 1) throw DimensionMismatch("cartan_full: chart size");
  RVec full(n);
  full.head(n - 1) = chart;
  full(n - 1) = -chart.sum();
  return full;
}

CMat cartan_matrix(const RVec& r_full) {
  const Eigen::Index n = r_full.size();
  CMat h = CMat::Zero(n, n);
  for (Eigen::Index k = 0; k < n; ++k) h(k, k) = Complex(0.0, r_full(k));
  return h;
}

RVec cartan_coords(const CMat& h, double tau) {
  const Eigen::Index n = h.rows();
  double off = 0.0;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      if (i != j) off += std::norm(h(i, j));
  if (std::sqrt(off) > tau) throw NotCartan("cartan_coords: off-diagonal mass above tolerance");
  RVec r(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    if (std::abs(h(k, k).real()) > tau) throw NotCartan("cartan_coords: diagonal not imaginary");
    r(k) = h(k, k).imag();
  }
  return r;
}

Complex killing(const CMat& x, const CMat& y) {
  if (x.rows() != y.rows() || x.cols() != y.cols())
    throw DimensionMismatch("killing: shape mismatch");
  const double n = static_cast<double>(x.rows());
  return 2.0 * n * (x * y).trace();
}

double im_killing(const CMat& x, const CMat& y) { return killing(x, y).imag(); }

double dual_pairing(const CMat& x_rep, const CMat& eps) { return killing(x_rep, eps).real(); }

CoalgebraVector coadjoint_act(const CMat& g, const CoalgebraVector& a, double tau) {
  if (!is_unitary(g, tau) || !is_unit_determinant(g, 1e2 * tau))
    throw NotUnitary("coadjoint_act: g not in SU(n)");
  return CoalgebraVector(g * a.alpha() * g.adjoint(), 1e2 * tau);
}

std::vector<CMat> su_basis(int n) {
  std::vector<CMat> basis;
  for (int j = 0; j < n; ++j) {
    for (int k = j + 1; k < n; ++k) {
      CMat b = CMat::Zero(n, n);
      b(j, k) = 1.0;
      b(k, j) = -1.0;
      basis.push_back(b);
      CMat c = CMat::Zero(n, n);
      c(j, k) = Complex(0, 1);
      c(k, j) = Complex(0, 1);
      basis.push_back(c);
    }
  }
  for (int m = 0; m < n - 1; ++m) {
    RVec chart = RVec::Zero(n - 1);
    chart(m) = 1.0;
    basis.push_back(cartan_matrix(cartan_full(chart, n)));
  }
  return basis;
}

std::vector<CMat> dual_basis(int n, const CartanForm& u) {
  std::vector<CMat> basis;
  for (int j = 0; j < n; ++j) {
    for (int k = j + 1; k < n; ++k) {
      CMat b = CMat::Zero(n, n);
      b(j, k) = 1.0;
      basis.push_back(b);
      CMat c = CMat::Zero(n, n);
      c(j, k) = Complex(0, 1);
      basis.push_back(c);
    }
  }
  for (int m = 0; m < n - 1; ++m) {
    RVec chart = RVec::Zero(n - 1);
    chart(m) = 1.0;
    RVec r = cartan_full(chart, n);
    RVec s = u.apply_coords(r);
    // i(h + i u(h)) with h = i diag(r): equals -diag(r) - i diag(u(r))
    CMat t = CMat::Zero(n, n);
    for (int k = 0; k < n; ++k) t(k, k) = Complex(-r(k), -s(k));
    basis.push_back(t);
  }
  return basis;
}

namespace {
RVec real_vectorize(const CMat& x) {
  const Eigen::Index n2 = x.size();
  RVec v(2 * n2);
  Eigen::Map<const Eigen::VectorXcd> flat(x.data(), n2);
  v.head(n2) = flat.real();
  v.tail(n2) = flat.imag();
  return v;
}
}  // namespace

RVec real_expand(const std::vector<CMat>& basis, const CMat& x, double tau) {
  const Eigen::Index rows = 2 * x.size();
  RMat b(rows, static_cast<Eigen::Index>(basis.size()));
  for (size_t i = 0; i < basis.size(); ++i) b.col(static_cast<Eigen::Index>(i)) = real_vectorize(basis[i]);
  RVec rhs = real_vectorize(x);
  RVec c = b.colPivHouseholderQr().solve(rhs);
  if ((b * c - rhs).norm() > tau * (1.0 + rhs.norm()))
    throw SingularDecomposition("real_expand: element outside span");
  return c;
}

RMat ad_operator(const CMat& alpha, double tau) {
  if (!is_traceless(alpha, 1e-6)) throw Error("ad_operator: alpha not traceless");
  (void)tau;
  const int n = static_cast<int>(alpha.rows());
  std::vector<CMat> basis = su_basis(n);
  const size_t d = basis.size();
  std::vector<CMat> full;
  full.reserve(2 * d);
  for (const auto& b : basis) full.push_back(b);
  for (const auto& b : basis) full.push_back(Complex(0, 1) * b);
  RMat op(2 * d, 2 * d);
  for (size_t i = 0; i < 2 * d; ++i) {
    CMat br = alpha * full[i] - full[i] * alpha;
    op.col(static_cast<Eigen::Index>(i)) = real_expand(full, br);
  }
  return op;
}

RVec dominant_project(const CoalgebraVector& a) {
  CMat herm = Complex(0, 1) * a.alpha();
  Eigen::SelfAdjointEigenSolver<CMat> es(herm, Eigen::EigenvaluesOnly);
  RVec ev = es.eigenvalues();
  std::sort(ev.data(), ev.data() + ev.size(), std::greater<double>());
  return ev;
}

}  // namespace plc
