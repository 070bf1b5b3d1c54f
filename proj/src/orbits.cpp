#include "plc/orbits.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>
#include <cmath>
#include <random>

namespace plc {

OrbitPoint make_orbit_point(OrbitKind kind, const CoalgebraVector& a,
                            const PoissonParams& params) {
  OrbitPoint p;
  p.kind = kind;
  p.coadjoint_rep = a;
  if (kind == OrbitKind::dressing) p.dual_rep = e_map(a, params);
  return p;
}

CoalgebraVector coadjoint_tangent(const CoalgebraVector& a, const CMat& xi) {
  return universal_field(a, xi);
}

double kks_eval(const CoalgebraVector& a, const CMat& xi, const CMat& eta) {
  CMat br = xi * eta - eta * xi;
  return -killing(a.alpha(), br).real();
}

double moment_residual_hamiltonian(const CoalgebraVector& a, const CMat& xi, const CMat& eta) {
  double lhs = kks_eval(a, eta, xi);
  double rhs = dual_pairing(coadjoint_tangent(a, eta).alpha(), xi);
  return std::abs(lhs - rhs);
}

double dressing_form_eval(const OrbitPoint& x, const CMat& xi, const CMat& eta,
                          const PoissonParams& params, const FdConfig& fd) {
  const CoalgebraVector& a = x.coadjoint_rep;
  CoalgebraVector vx = coadjoint_tangent(a, xi);
  CoalgebraVector vy = coadjoint_tangent(a, eta);
  return kks_eval(a, xi, eta) + omega_eval(a, vx, vy, params, fd);
}

double moment_residual_poisson(const OrbitPoint& x, const CMat& eps, const CMat& eta,
                               const PoissonParams& params, const FdConfig& fd) {
  const CoalgebraVector& a = x.coadjoint_rep;
  double lhs = dressing_form_eval(x, eta, eps, params, fd);
  const DualGroupElement& elem = x.dual_rep ? *x.dual_rep : e_map(a, params);
  CoalgebraVector vx = coadjoint_tangent(a, eta);
  CMat dx = e_push(a, vx, params, fd.spatial * (1.0 + a.norm()));
  double rhs = (1.0 / params.t) * mc_pair(elem, dx * elem.embedding().inverse(), eps);
  return std::abs(lhs - rhs);
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

}  // namespace

CMat random_su_element(int n, std::uint64_t seed) {
  std::mt19937_64 gen(splitmix64(seed));
  std::normal_distribution<double> dist(0.0, 1.0);
  CMat a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = Complex(dist(gen), dist(gen));
  Eigen::HouseholderQR<CMat> qr(a);
  CMat q = qr.householderQ();
  CMat r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int k = 0; k < n; ++k) {
    Complex d = r(k, k);
    q.col(k) *= d / std::abs(d);  // phase fix
  }
  Complex det = q.determinant();
  q *= std::exp(Complex(0.0, -std::arg(det) / n));
  return q;
}

CMat random_su_algebra(int n, std::uint64_t seed) {
  std::mt19937_64 gen(splitmix64(seed ^ 0xa5a5a5a5a5a5a5a5ull));
  std::normal_distribution<double> dist(0.0, 1.0);
  std::vector<CMat> basis = su_basis(n);
  CMat x = CMat::Zero(n, n);
  for (const CMat& b : basis) x += dist(gen) * b;
  double nrm = x.norm();
  if (nrm < 1e-12) return 0.1 * basis.front();
  if (nrm < 0.1) x *= 0.1 / nrm;
  if (nrm > 2.0) x *= 2.0 / nrm;
  return x;
}

std::vector<OrbitPoint> orbit_sample(std::uint64_t seed, int count, const CoalgebraVector& base,
                                     OrbitKind kind, const PoissonParams& params) {
  if (count < 1) throw ConfigInvalid("orbit_sample: count >= 1 required");
  std::vector<OrbitPoint> out;
  out.reserve(static_cast<size_t>(count));
  const int n = base.dim();
  for (int i = 0; i < count; ++i) {
    CMat g = i == 0 ? CMat::Identity(n, n)
                    : random_su_element(n, splitmix64(seed) + static_cast<std::uint64_t>(i));
    out.push_back(make_orbit_point(kind, coadjoint_act(g, base), params));
  }
  return out;
}

ConvexityReport convexity_check(const std::vector<OrbitPoint>& points, double tolerance) {
  ConvexityReport rep;
  rep.count = static_cast<int>(points.size());
  if (points.empty()) {
    rep.consistent = true;
    return rep;
  }
  rep.dominant_weight = dominant_project(points.front().coadjoint_rep);
  for (const OrbitPoint& p : points) {
    RVec w = dominant_project(p.coadjoint_rep);
    rep.spread = std::max(rep.spread, (w - rep.dominant_weight).cwiseAbs().maxCoeff());
  }
  rep.consistent = rep.spread <= tolerance;
  if (!rep.consistent)
    throw Inconsistent("convexity_check: dominant projections disagree beyond tolerance");
  return rep;
}

RMat form_matrix(const OrbitPoint& x, const PoissonParams& params, bool kks_only,
                 const FdConfig& fd) {
  const int n = x.coadjoint_rep.dim();
  std::vector<CMat> basis = su_basis(n);
  const int d = static_cast<int>(basis.size());
  RMat m = RMat::Zero(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      double v = kks_only ? kks_eval(x.coadjoint_rep, basis[i], basis[j])
                          : dressing_form_eval(x, basis[i], basis[j], params, fd);
      m(i, j) = v;
      m(j, i) = -v;
    }
  }
  return m;
}

RVec form_singular_values(const RMat& m) {
  Eigen::JacobiSVD<RMat> svd(m);
  return svd.singularValues();
}

CMat lift_generator(const CoalgebraVector& a, const CoalgebraVector& tangent, double tau) {
  const int n = a.dim();
  std::vector<CMat> basis = su_basis(n);
  RMat cols(2 * n * n, static_cast<int>(basis.size()));
  for (size_t i = 0; i < basis.size(); ++i) {
    CMat t = coadjoint_tangent(a, basis[i]).alpha();
    Eigen::Map<const Eigen::VectorXcd> flat(t.data(), t.size());
    cols.col(static_cast<Eigen::Index>(i)).head(n * n) = flat.real();
    cols.col(static_cast<Eigen::Index>(i)).tail(n * n) = flat.imag();
  }
  RVec rhs(2 * n * n);
  Eigen::Map<const Eigen::VectorXcd> flat(tangent.alpha().data(), tangent.alpha().size());
  rhs.head(n * n) = flat.real();
  rhs.tail(n * n) = flat.imag();
  RVec c = cols.bdcSvd(Eigen::ComputeThinU | Eigen::ComputeThinV).solve(rhs);
  if ((cols * c - rhs).norm() > tau * (1.0 + rhs.norm()))
    throw DegenerateRepresentation("lift_generator: tangent outside the orbit tangent space");
  CMat xi = CMat::Zero(n, n);
  for (size_t i = 0; i < basis.size(); ++i) xi += c(static_cast<Eigen::Index>(i)) * basis[i];
  return xi;
}

int orbit_dimension(const CoalgebraVector& a, double tau) {
  const int n = a.dim();
  std::vector<CMat> basis = su_basis(n);
  RMat tangents(2 * n * n, static_cast<int>(basis.size()));
  for (size_t i = 0; i < basis.size(); ++i) {
    CMat t = coadjoint_tangent(a, basis[i]).alpha();
    Eigen::Map<const Eigen::VectorXcd> flat(t.data(), t.size());
    tangents.col(static_cast<Eigen::Index>(i)).head(n * n) = flat.real();
    tangents.col(static_cast<Eigen::Index>(i)).tail(n * n) = flat.imag();
  }
  Eigen::JacobiSVD<RMat> svd(tangents);
  RVec sv = svd.singularValues();
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > tau * sv(0)) ++rank;
  return rank;
}

}  // namespace plc
