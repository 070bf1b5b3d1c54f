#pragma once

// Structure theory for su(n): Killing form, Manin-triple pairing Im K,
// Cartan charts, antisymmetric Cartan forms, coadjoint action and the
// Weyl-chamber projection.
//
// Conventions pinned across the library:
//   * K(X, Y) = 2n tr(X Y) on sl(n,C) (the Killing form).
//   * Cartan chart: h = i diag(r_1..r_n), sum r = 0, parametrized by the
//     first n-1 entries.
//   * A CartanForm stores the bilinear form matrix M in that chart; the
//     associated operator is defined by K(u(a), b) = u_form(a, b), which in
//     chart coordinates reads r -> (1/2n) Ginv M r with Ginv = I - 11^T/n.

#include <Eigen/Dense>
#include <vector>

#include "plc/cmatrix.hpp"

namespace plc {

using RMat = Eigen::MatrixXd;

/// Element of g* represented by its Killing-dual matrix alpha = K(a),
/// an anti-Hermitian traceless complex matrix. Tangent vectors to g* use
/// the same representation.
class CoalgebraVector {
 public:
  CoalgebraVector() = default;
  explicit CoalgebraVector(CMat alpha, double tau = tol::alg);
  static CoalgebraVector zero(int n);

  const CMat& alpha() const { return alpha_; }
  int dim() const { return static_cast<int>(alpha_.rows()); }
  double norm() const { return alpha_.norm(); }

 private:
  CMat alpha_;
};

/// Real antisymmetric bilinear form on the Cartan subalgebra (the twist
/// datum u, or w for the t=0 family), stored as its (n-1)x(n-1) chart
/// matrix.
class CartanForm {
 public:
  CartanForm() = default;
  /// Canonicalizes to the antisymmetric part and records the discarded
  /// symmetric mass.
  explicit CartanForm(const RMat& m);
  static CartanForm zero(int rank);

  int rank() const { return static_cast<int>(form_.rows()); }
  int group_dim() const { return rank() + 1; }
  const RMat& form() const { return form_; }
  double discarded_symmetric_mass() const { return discarded_; }
  bool is_zero() const { return form_.size() == 0 || form_.cwiseAbs().maxCoeff() == 0.0; }

  /// Bilinear form value on chart coordinate vectors (length n-1).
  double form_value(const RVec& a, const RVec& b) const;

  /// Operator in full Cartan coordinates: length-n trace-free vector in,
  /// length-n trace-free vector out.
  RVec apply_coords(const RVec& r_full) const;

  /// Operator on Cartan elements of su(n): i diag(r) -> i diag(u(r)).
  /// Throws NotCartan if the off-diagonal mass of h exceeds tau.
  CMat apply(const CMat& h, double tau = tol::alg) const;

 private:
  RMat form_;  // antisymmetric, (n-1)x(n-1)
  double discarded_ = 0.0;
};

enum class Family { generic, special };

/// The (t, u) family datum, or the t=0 family datum w.
struct PoissonParams {
  Family family = Family::generic;
  double t = 0.0;
  CartanForm u;  // u for generic, w for special

  static PoissonParams generic(double t, CartanForm u);
  static PoissonParams special(CartanForm w);
  int group_dim() const { return u.group_dim(); }
};

// ---- Cartan chart helpers ----
/// Completes chart coordinates (length n-1) to a trace-free length-n vector.
RVec cartan_full(const RVec& chart, int n);
/// Cartan element i diag(r) from a full coordinate vector.
CMat cartan_matrix(const RVec& r_full);
/// Full coordinates r of a Cartan element h = i diag(r).
RVec cartan_coords(const CMat& h, double tau = tol::alg);

// ---- bilinear forms ----
/// Killing form K(X, Y) = 2n tr(X Y); complex bilinear, symmetric.
Complex killing(const CMat& x, const CMat& y);
/// Manin-triple pairing k = Im K.
double im_killing(const CMat& x, const CMat& y);
/// Real pairing between g*-representatives and g used for <da, eps>.
double dual_pairing(const CMat& x_rep, const CMat& eps);

/// Coadjoint action alpha -> g alpha g^{-1}. Throws NotUnitary.
CoalgebraVector coadjoint_act(const CMat& g, const CoalgebraVector& a, double tau = tol::alg);

/// Matrix of X -> [alpha, X] on sl(n,C) viewed as a real vector space, in
/// the basis su_basis(n) followed by i * su_basis(n).
RMat ad_operator(const CMat& alpha, double tau = tol::alg);

/// Free-function spelling: CartanForm applied to a Cartan element.
inline CMat u_apply(const CartanForm& u, const CMat& h, double tau = tol::alg) {
  return u.apply(h, tau);
}

/// Eigenvalues of i alpha in descending order (Weyl chamber representative).
RVec dominant_project(const CoalgebraVector& a);

// ---- fixed real bases ----
/// Anti-Hermitian basis of su(n): E_jk - E_kj, i(E_jk + E_kj) for j<k, then
/// Cartan generators i diag(e_m - trace completion).
std::vector<CMat> su_basis(int n);
/// Basis of g*_u: E_jk, i E_jk for j<k, then twisted Cartan generators
/// i(h_m + i u(h_m)).
std::vector<CMat> dual_basis(int n, const CartanForm& u);

/// Real-linear expansion of an sl(n,C) element over a set of matrices;
/// least squares, throws SingularDecomposition if the residual is large.
RVec real_expand(const std::vector<CMat>& basis, const CMat& x, double tau = 1e-8);

}  // namespace plc
