#pragma once

// Dense complex matrix kernel: structured factorizations, Hermitian matrix
// functions and finite-difference pushforwards. Everything here is sized for
// n <= 8; matrix functions go through full spectral decompositions.

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <utility>

#include "plc/errors.hpp"

namespace plc {

using CMat = Eigen::MatrixXcd;
using RVec = Eigen::VectorXd;
using Complex = std::complex<double>;

namespace tol {
inline constexpr double alg = 1e-10;   // default algebraic tolerance
inline constexpr double t_min = 1e-8;  // generic-family exclusion around t=0
}  // namespace tol

// ---- predicates (absolute tolerance) ----
bool is_finite(const CMat& m);
bool is_hermitian(const CMat& m, double tau = tol::alg);
bool is_anti_hermitian(const CMat& m, double tau = tol::alg);
bool is_unitary(const CMat& m, double tau = tol::alg);
bool is_unit_determinant(const CMat& m, double tau = tol::alg);
bool is_positive_definite(const CMat& m, double tau = tol::alg);
bool is_unit_upper_triangular(const CMat& m, double tau = tol::alg);
bool is_traceless(const CMat& m, double tau = tol::alg);

/// exp(H) of a Hermitian matrix via spectral decomposition.
/// Throws NotHermitian if the symmetry residual exceeds tau.
CMat herm_exp(const CMat& h, double tau = tol::alg);

/// Unique Hermitian logarithm of a positive-definite Hermitian matrix.
/// Throws NotPositiveDefinite if any eigenvalue <= tau.
CMat herm_log(const CMat& p, double tau = tol::alg);

/// P = N D N^H with N unit-upper-triangular and D positive diagonal.
/// Computed by Cholesky of the index-reversed matrix J P J.
struct UduFactors {
  CMat nilpotent;   // unit upper triangular
  RVec diagonal;    // positive entries of D
};
UduFactors udu_factor(const CMat& p, double tau = tol::alg);

/// Central-difference directional derivative of a map between real
/// coordinate spaces: (f(x + h d) - f(x - h d)) / (2 h).
RVec fd_pushforward(const std::function<RVec(const RVec&)>& map, const RVec& base,
                    const RVec& direction, double step);

/// Derivative at 0 of a matrix-valued curve s -> f(s), by a 5-point central
/// stencil (4th order): the extra accuracy lets double-FD pipelines built on
/// top of it use a wider step without hitting roundoff.
CMat fd_pushforward_mat(const std::function<CMat(double)>& curve, double step);

/// Default finite-difference step: base_step * (1 + scale).
inline double fd_step(double scale, double base_step = 1e-5) {
  return base_step * (1.0 + scale);
}

}  // namespace plc
