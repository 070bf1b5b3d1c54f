#pragma once

// The dual group G*_u embedded in SL(n,C), the maps f, j and e_(t,u), the
// dressing action via f-images, dressing vector fields, Maurer-Cartan
// pairings, and the t=0 family G*_{(0,w)}.

#include <optional>
#include <utility>
#include <vector>

#include "plc/cmatrix.hpp"
#include "plc/lie_su.hpp"

namespace plc {

/// A = N exp{i(a + i u(a))} with N unit upper triangular and a in the Cartan
/// subalgebra. The G^C embedding is cached at construction.
class DualGroupElement {
 public:
  DualGroupElement() = default;
  /// Builds the embedding from the factor pair.
  DualGroupElement(CMat nilpotent, RVec cartan_chart, CartanForm u, double tau = tol::alg);
  static DualGroupElement identity(int n, CartanForm u);

  const CMat& nilpotent() const { return nilpotent_; }
  /// Chart coordinates r_1..r_{n-1} of a = i diag(r), trace-completed.
  const RVec& cartan_chart() const { return chart_; }
  const CartanForm& cartan_form() const { return u_; }
  const CMat& embedding() const { return embedding_; }
  int dim() const { return static_cast<int>(embedding_.rows()); }

 private:
  CMat nilpotent_;
  RVec chart_;
  CartanForm u_;
  CMat embedding_;
};

/// f(A) = A A^H; lands in SG (positive Hermitian, unit determinant).
CMat f_map(const DualGroupElement& a);

/// Unique A in G*_u with A A^H = P. Throws NotInSG on invalid input.
DualGroupElement f_inverse(const CMat& p, const CartanForm& u, double tau = tol::alg);

/// j(a) = exp(2 i t alpha), an element of SG.
CMat j_map(const CoalgebraVector& a, double t);

/// e_(t,u) = f^{-1} o j. Throws ParamOutOfRange for |t| < t_min.
DualGroupElement e_map(const CoalgebraVector& a, const PoissonParams& params);

/// alpha = herm_log(A A^H) / (2 i t).
CoalgebraVector e_inverse(const DualGroupElement& a, const PoissonParams& params);

/// Dressing action: g . A = A^g . g' factorized through f-images.
struct DressResult {
  DualGroupElement dressed;  // A^g
  CMat compensator;          // g', unitary
};
DressResult dress(const CMat& g, const DualGroupElement& a, double tau = tol::alg);

/// Right-trivialized derivative of the dress flow: the g*_u component xi of
/// eps = xi + Ad(A) eta. Throws SingularDecomposition if the splitting
/// degenerates.
CMat dressing_vector(const CMat& eps, const DualGroupElement& a);

/// <dA A^{-1}, eps> with the Manin pairing k = Im K; `tangent` is the
/// right-trivialized tangent at A.
double mc_pair(const DualGroupElement& a, const CMat& tangent, const CMat& eps);

/// Embedding of the curve s -> e_map(a + s X), for pushforwards.
CMat e_push(const CoalgebraVector& a, const CoalgebraVector& x, const PoissonParams& params,
            double step);

// ---- the t=0 family ----

/// Point of g*_0 in chart form: a = ih + n with h = i diag(r).
/// body() realizes it in sl(n,C) as -diag(r) + n.
struct SpecialChart {
  RVec h_coords;  // full length n, trace-free
  CMat upper;     // strictly upper triangular

  CMat body() const;
  static SpecialChart from_body(const CMat& body, double tau = tol::alg);
  static SpecialChart zero(int n);
};

/// Element of G*_{(0,w)}: the g*_0 body plus the torus tag exp(-w(h)).
struct SpecialDualElement {
  SpecialChart point;
  CMat torus_tag;  // exp(-w(h)), unitary diagonal
  CartanForm w;
};

SpecialDualElement e_w_map(const CMat& body, const CartanForm& w, double tau = tol::alg);
CMat e_w_inverse(const SpecialDualElement& a);

/// Semi-direct product law of G*_{(0,w)}; used as the FD oracle target for
/// the Maurer-Cartan formula.
SpecialDualElement special_multiply(const SpecialDualElement& a, const SpecialDualElement& b);

/// dA A^{-1} = (i dh + dn - [w(dh), n], -w(dh)); returned as the pair
/// (sl(n,C) part, Cartan part). Only the first component enters pairings
/// with g.
std::pair<CMat, CMat> mc_form_special(const SpecialDualElement& a, const SpecialChart& tangent);

}  // namespace plc
