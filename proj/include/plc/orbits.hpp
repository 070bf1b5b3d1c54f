#pragma once

// Symplectic model manifolds: coadjoint orbits with the Kirillov-Kostant-
// Souriau form, and dressing orbits carrying omega = kks + mu^* Omega_(t,u).
// Points of a dressing orbit are kept in the mu = e^{-1} chart, where the
// moment map is the identity and tangent pushforwards are trivial.

#include <cstdint>
#include <optional>
#include <vector>

#include "plc/forms.hpp"

namespace plc {

enum class OrbitKind { coadjoint, dressing };

struct OrbitPoint {
  OrbitKind kind = OrbitKind::coadjoint;
  CoalgebraVector coadjoint_rep;                 // mu(x)
  std::optional<DualGroupElement> dual_rep;      // e_map(coadjoint_rep) for dressing points
};

OrbitPoint make_orbit_point(OrbitKind kind, const CoalgebraVector& a,
                            const PoissonParams& params);

/// Tangent of the coadjoint action generated by xi: representative [xi, alpha].
CoalgebraVector coadjoint_tangent(const CoalgebraVector& a, const CMat& xi);

/// KKS form on generators: omega~(v_xi, v_eta) = -K(alpha, [xi, eta]).
double kks_eval(const CoalgebraVector& a, const CMat& xi, const CMat& eta);

/// |omega~(v_eta, v_xi) - <da(v_eta), xi>|; zero by construction, pins the
/// sign convention.
double moment_residual_hamiltonian(const CoalgebraVector& a, const CMat& xi, const CMat& eta);

/// omega = kks + Omega_(t,u) on dressing-orbit tangents given by generators.
double dressing_form_eval(const OrbitPoint& x, const CMat& xi, const CMat& eta,
                          const PoissonParams& params, const FdConfig& fd = {});

/// Residual of the Lu-Weinstein moment condition on the dressing
/// orbit: |omega(v_eta, v_eps) - (1/t) <dA A^{-1}(e_* v_eta), eps>_k|.
double moment_residual_poisson(const OrbitPoint& x, const CMat& eps, const CMat& eta,
                               const PoissonParams& params, const FdConfig& fd = {});

/// Deterministic Haar-ish unitaries: QR of a Gaussian matrix with positive
/// diagonal phases, det-corrected into SU(n).
CMat random_su_element(int n, std::uint64_t seed);
/// Random su(n) element: Gaussian coefficients in the fixed basis, norm
/// clamped to [0.1, 2].
CMat random_su_algebra(int n, std::uint64_t seed);

std::vector<OrbitPoint> orbit_sample(std::uint64_t seed, int count, const CoalgebraVector& base,
                                     OrbitKind kind, const PoissonParams& params);

struct ConvexityReport {
  RVec dominant_weight;  // common value of dominant_project over mu
  double spread = 0.0;
  int count = 0;
  bool consistent = false;
};
/// Degenerate single-orbit convexity statement: all dominant projections
/// coincide. Throws Inconsistent if the spread exceeds the tolerance.
ConvexityReport convexity_check(const std::vector<OrbitPoint>& points, double tolerance = 1e-8);

/// Antisymmetric matrix of a form over the universal fields of su_basis.
RMat form_matrix(const OrbitPoint& x, const PoissonParams& params, bool kks_only,
                 const FdConfig& fd = {});

/// Singular values of a form matrix, descending.
RVec form_singular_values(const RMat& m);

/// Orbit dimension at a point: rank of the tangent map xi -> [xi, alpha].
int orbit_dimension(const CoalgebraVector& a, double tau = 1e-8);

/// Least-squares lift of an orbit tangent to a generator xi with
/// [xi, alpha] = tangent. Throws DegenerateRepresentation if the tangent is
/// not in the orbit tangent space within `tau` (relative).
CMat lift_generator(const CoalgebraVector& a, const CoalgebraVector& tangent, double tau = 1e-6);

}  // namespace plc
