#include "plc/cmatrix.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <cmath>

namespace plc {

bool is_finite(const CMat& m) { return m.allFinite(); }

bool is_hermitian(const CMat& m, double tau) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tau;
}

bool is_anti_hermitian(const CMat& m, double tau) {
  return (m + m.adjoint()).cwiseAbs().maxCoeff() <= tau;
}

bool is_unitary(const CMat& m, double tau) {
  CMat id = CMat::Identity(m.rows(), m.cols());
  return (m * m.adjoint() - id).cwiseAbs().maxCoeff() <= tau;
}

bool is_unit_determinant(const CMat& m, double tau) {
  return std::abs(m.determinant() - 1.0) <= tau;
}

bool is_positive_definite(const CMat& m, double tau) {
  if (!is_hermitian(m, tau)) return false;
  Eigen::SelfAdjointEigenSolver<CMat> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff() > tau;
}

bool is_unit_upper_triangular(const CMat& m, double tau) {
  const Eigen::Index n = m.rows();
  for (Eigen::Index j = 0; j < n; ++j) {
    if (std::abs(m(j, j) - 1.0) > tau) return false;
    for (Eigen::Index i = j + 1; i < n; ++i)
      if (std::abs(m(i, j)) > tau) return false;
  }
  return true;
}

bool is_traceless(const CMat& m, double tau) {
  return std::abs(m.trace()) <= tau;
}

CMat herm_exp(const CMat& h, double tau) {
  if (!is_hermitian(h, tau)) throw NotHermitian("herm_exp: input not Hermitian");
  Eigen::SelfAdjointEigenSolver<CMat> es(h);
  return es.eigenvectors() * es.eigenvalues().array().exp().matrix().asDiagonal() *
         es.eigenvectors().adjoint();
}

CMat herm_log(const CMat& p, double tau) {
  if (!is_hermitian(p, tau)) throw NotPositiveDefinite("herm_log: input not Hermitian");
  Eigen::SelfAdjointEigenSolver<CMat> es(p);
  if (es.eigenvalues().minCoeff() <= tau)
    throw NotPositiveDefinite("herm_log: eigenvalue below tolerance");
  return es.eigenvectors() * es.eigenvalues().array().log().matrix().asDiagonal() *
         es.eigenvectors().adjoint();
}

UduFactors udu_factor(const CMat& p, double tau) {
  if (!is_hermitian(p, tau)) throw NotPositiveDefinite("udu_factor: input not Hermitian");
  const Eigen::Index n = p.rows();
  CMat j = CMat::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) j(i, n - 1 - i) = 1.0;

  // J P J = L L^H, then N = J L diag(1/l_kk) J is unit upper triangular.
  Eigen::LLT<CMat> llt(j * p * j);
  if (llt.info() != Eigen::Success)
    throw NotPositiveDefinite("udu_factor: Cholesky pivot failed");
  CMat l = llt.matrixL();
  RVec piv = l.diagonal().real();
  if (piv.minCoeff() <= tau) throw NotPositiveDefinite("udu_factor: pivot below tolerance");

  CMat unit_lower = l * piv.cwiseInverse().asDiagonal();
  UduFactors out;
  out.nilpotent = j * unit_lower * j;
  RVec d = piv.array().square();
  out.diagonal = d.reverse();
  return out;
}

RVec fd_pushforward(const std::function<RVec(const RVec&)>& map, const RVec& base,
                    const RVec& direction, double step) {
  if (step <= 0.0) throw ParamOutOfRange("fd_pushforward: step must be positive");
  RVec plus, minus;
  try {
    plus = map(base + step * direction);
    minus = map(base - step * direction);
  } catch (const std::exception& e) {
    throw EvaluationFailed(std::string("fd_pushforward: map failed at probe point: ") + e.what());
  }
  return (plus - minus) / (2.0 * step);
}

CMat fd_pushforward_mat(const std::function<CMat(double)>& curve, double step) {
  if (step <= 0.0) throw ParamOutOfRange("fd_pushforward_mat: step must be positive");
  // 5-point central stencil, fourth order.
  CMat p1, m1, p2, m2;
  try {
    p1 = curve(step);
    m1 = curve(-step);
    p2 = curve(2.0 * step);
    m2 = curve(-2.0 * step);
  } catch (const std::exception& e) {
    throw EvaluationFailed(std::string("fd_pushforward_mat: curve failed at probe point: ") +
                           e.what());
  }
  return (8.0 * (p1 - m1) - (p2 - m2)) / (12.0 * step);
}

}  // namespace plc
