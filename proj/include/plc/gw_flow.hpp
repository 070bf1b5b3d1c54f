#pragma once

// Ginzburg-Weinstein deformation: the coefficient field E(A) solving
// beta = <E(A), dA A^{-1}>, the Moser-type field V = t v_E, RK4 integration
// in t, and the symplectomorphism certification between the start and end
// orbit structures.

#include <cstdint>
#include <vector>

#include "plc/orbits.hpp"

namespace plc {

struct FlowConfig {
  double t_start = 0.5;
  double t_end = 0.1;
  int steps = 100;
  CartanForm u;
  double step_tolerance = 1e-6;  // per-step halving estimate bound
  bool halving_check = true;
  FdConfig fd;
  int quad_order = 16;

  void validate() const;
};

struct FlowTrajectory {
  std::vector<double> times;
  std::vector<CoalgebraVector> points;
  double max_field_norm = 0.0;
  double max_step_error = 0.0;  // step-halving estimate, if enabled
};

struct FlowResult {
  FlowConfig config;
  std::vector<FlowTrajectory> trajectories;
};

struct CoefficientField {
  CMat value;           // E(A) in su(n)
  double fit_residual;  // least-squares defect of the defining equation
  double condition;     // condition number of the pairing matrix
};

/// Solves beta_(t,u)(X) = <E(A), dA A^{-1}(e_* X)>_k over a basis of probe
/// directions; minimum-norm least squares. Throws IllConditioned when the
/// pairing matrix condition number exceeds 1e10.
CoefficientField coefficient_field(const CoalgebraVector& a, const PoissonParams& params,
                                   const FdConfig& fd = {}, int quad_order = 16);

/// Moser field on the orbit: V = t v_E with E = coefficient_field. The sign
/// and t-scaling are fixed by requiring omega(X, V) = mu^* beta(X).
CoalgebraVector v_field(const CoalgebraVector& a, const PoissonParams& params,
                        const FdConfig& fd = {}, int quad_order = 16);

/// Independent route: solve omega(v_j, V') = beta(v_j) over the orbit
/// tangent basis. Used as the dual-route oracle for v_field.
CoalgebraVector v_field_bivector_route(const CoalgebraVector& a, const PoissonParams& params,
                                       const FdConfig& fd = {});

FlowResult integrate_flow(const std::vector<CoalgebraVector>& seeds, const FlowConfig& config);

/// Endpoint of a single flow without trajectory bookkeeping.
CoalgebraVector flow_endpoint(const CoalgebraVector& seed, const FlowConfig& config);

struct SymplectoReport {
  double max_relative_residual = 0.0;
  double median_relative_residual = 0.0;
  int pairs = 0;
};

/// Pushes tangent pairs through the flow map by finite differences and
/// compares omega_{t_end} on the images against omega_{t_start} on the
/// originals.
SymplectoReport symplecto_residual(const CoalgebraVector& seed, const FlowConfig& config,
                                   int pairs, std::uint64_t pair_seed,
                                   double fd_step = 1e-4);

}  // namespace plc
