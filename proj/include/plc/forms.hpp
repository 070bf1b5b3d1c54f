#pragma once

// The 2-form Omega_(t,u) = omega_1 + omega_2 on g*, its radial primitive and
// t-derivative beta, the constant-coefficient form Omega_w of the t=0
// family, numerical exterior derivatives, and the contraction identities.

#include <functional>
#include <vector>

#include "plc/dual_group.hpp"
#include "plc/lie_su.hpp"

namespace plc {

/// Finite-difference step configuration. Effective steps are scaled by
/// (1 + norm of the base point) resp. (1 + |t|).
struct FdConfig {
  double spatial = 2e-4;  // 4th-order stencils: truncation is negligible here,
                          // so the step is sized to suppress roundoff instead
  double t_step = 1e-4;
};

/// First summand of Omega_(t,u): closed-form evaluation through the spectral
/// function phi(lambda) = (e^{2 i t lambda} - 1 - 2 i t lambda) / lambda^2
/// applied to ad(alpha). phi(0) = -2 t^2.
double omega1_eval(const CoalgebraVector& a, const CoalgebraVector& x, const CoalgebraVector& y,
                   double t);

/// Second summand: pullback of K(A^{-1} dA ^ dAbar Abar^{-1}) through
/// e_(t,u), with dA obtained by central differences on embeddings.
double omega2_eval(const CoalgebraVector& a, const CoalgebraVector& x, const CoalgebraVector& y,
                   const PoissonParams& params, const FdConfig& fd = {});

/// Omega_(t,u) = omega_1 + omega_2.
double omega_eval(const CoalgebraVector& a, const CoalgebraVector& x, const CoalgebraVector& y,
                  const PoissonParams& params, const FdConfig& fd = {});

/// Omega_w = (1/2) w(dh ^ dh). The base point is irrelevant (constant
/// coefficients) but kept for interface symmetry.
double omega_w_eval(const SpecialChart& base, const SpecialChart& x, const SpecialChart& y,
                    const CartanForm& w);

using Form2 = std::function<double(const CoalgebraVector&, const CoalgebraVector&,
                                   const CoalgebraVector&)>;

/// |dOmega(X,Y,Z)| at a, with the three directional derivatives taken by
/// central differences of step `step` (constant coordinate fields on the
/// linear space g*, so bracket terms vanish).
double ext_deriv_residual(const Form2& form, const CoalgebraVector& a, const CoalgebraVector& x,
                          const CoalgebraVector& y, const CoalgebraVector& z, double step);

/// Universal field of the coadjoint action: representative [eps, alpha].
CoalgebraVector universal_field(const CoalgebraVector& a, const CMat& eps);

/// Projection of [eps, body] onto g*_0 along su(n): the universal field of
/// the t=0 family.
SpecialChart special_universal_field(const SpecialChart& a, const CMat& eps);

/// Contraction-identity residual of the generic family:
/// |Omega(X, v_eps) - ((1/t) <dA A^{-1}(e_* X), eps>_k
/// - <da(X), eps>)|.
double contraction_residual(const CoalgebraVector& a, const CMat& eps, const CoalgebraVector& x,
                            const PoissonParams& params, const FdConfig& fd = {});

/// Contraction-identity residual of the t=0 family; fully algebraic.
double contraction_residual_special(const SpecialChart& a, const CMat& eps, const SpecialChart& x,
                                    const CartanForm& w);

/// Radial-homotopy primitive: alpha_a(X) = int_0^1 s Omega(s a; a, X) ds by
/// Gauss-Legendre quadrature, order doubled until the change drops below
/// 1e-10 (16 -> 32 -> 64).
double primitive_eval(const CoalgebraVector& a, const CoalgebraVector& x,
                      const PoissonParams& params, const FdConfig& fd = {});

/// beta = d(primitive)/dt by central differences; dt_step <= 0 selects the
/// default 1e-4 (1 + |t|). Throws ParamOutOfRange if a probe would cross the
/// t=0 exclusion zone.
double beta_eval(const CoalgebraVector& a, const CoalgebraVector& x, const PoissonParams& params,
                 double dt_step = -1.0, const FdConfig& fd = {});

/// beta evaluated on several probe directions at once, sharing quadrature
/// bases across probes (used by the flow integrator).
RVec beta_batch(const CoalgebraVector& a, const std::vector<CoalgebraVector>& probes,
                const PoissonParams& params, double dt_step = -1.0, const FdConfig& fd = {},
                int quad_order = 16);

/// Gauss-Legendre nodes/weights on [0, 1].
struct Quadrature {
  RVec nodes;
  RVec weights;
};
Quadrature gauss_legendre_01(int order);

}  // namespace plc
