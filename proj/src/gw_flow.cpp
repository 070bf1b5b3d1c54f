#include "plc/gw_flow.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <limits>

namespace plc {

void FlowConfig::validate() const {
  if (steps < 1) throw ConfigInvalid("FlowConfig: steps >= 1 required");
  if (t_start * t_end <= 0.0)
    throw ConfigInvalid("FlowConfig: t_start and t_end must share a sign");
  if (std::min(std::abs(t_start), std::abs(t_end)) < tol::t_min)
    throw ParamOutOfRange("FlowConfig: |t| drops below the exclusion threshold");
  if (step_tolerance <= 0.0) throw ConfigInvalid("FlowConfig: step_tolerance must be positive");
}

CoefficientField coefficient_field(const CoalgebraVector& a, const PoissonParams& params,
                                   const FdConfig& fd, int quad_order) {
  const int n = a.dim();
  std::vector<CMat> gens = su_basis(n);
  std::vector<CoalgebraVector> probes;
  probes.reserve(gens.size());
  for (const CMat& g : gens) probes.emplace_back(g, tol::alg);

  RVec b = beta_batch(a, probes, params, -1.0, fd, quad_order);

  CMat emb = e_map(a, params).embedding();
  CMat inv = emb.inverse();
  const double h = fd.spatial * (1.0 + a.norm());
  const int d = static_cast<int>(gens.size());
  RMat pairing(d, d);
  for (int j = 0; j < d; ++j) {
    CMat mc = e_push(a, probes[static_cast<size_t>(j)], params, h) * inv;
    for (int i = 0; i < d; ++i) pairing(j, i) = im_killing(mc, gens[static_cast<size_t>(i)]);
  }

  Eigen::JacobiSVD<RMat> svd(pairing, Eigen::ComputeThinU | Eigen::ComputeThinV);
  RVec sv = svd.singularValues();
  double cond = sv(sv.size() - 1) > 0.0 ? sv(0) / sv(sv.size() - 1)
                                        : std::numeric_limits<double>::infinity();
  if (cond > 1e10)
    throw IllConditioned("coefficient_field: pairing matrix condition number exceeds 1e10");
  RVec c = svd.solve(b);

  CoefficientField out;
  out.value = CMat::Zero(n, n);
  for (int i = 0; i < d; ++i) out.value += c(i) * gens[static_cast<size_t>(i)];
  out.fit_residual = (pairing * c - b).norm();
  out.condition = cond;
  return out;
}

CoalgebraVector v_field(const CoalgebraVector& a, const PoissonParams& params,
                        const FdConfig& fd, int quad_order) {
  CoefficientField e = coefficient_field(a, params, fd, quad_order);
  CoalgebraVector gen = universal_field(a, e.value);
  return CoalgebraVector(params.t * gen.alpha(), tol::alg);
}

CoalgebraVector v_field_bivector_route(const CoalgebraVector& a, const PoissonParams& params,
                                       const FdConfig& fd) {
  const int n = a.dim();
  std::vector<CMat> gens = su_basis(n);
  const int d = static_cast<int>(gens.size());
  std::vector<CoalgebraVector> tangents;
  tangents.reserve(gens.size());
  for (const CMat& g : gens) tangents.push_back(universal_field(a, g));

  // The Moser identity lives on the orbit, where the symplectic form is
  // kks + Omega; solve omega(v_j, V') = beta(v_j) over the tangent basis.
  RMat m(d, d);
  RVec rhs(d);
  for (int j = 0; j < d; ++j) {
    rhs(j) = beta_eval(a, tangents[static_cast<size_t>(j)], params, -1.0, fd);
    m(j, j) = 0.0;
    for (int k = j + 1; k < d; ++k) {
      double v = kks_eval(a, gens[static_cast<size_t>(j)], gens[static_cast<size_t>(k)]) +
                 omega_eval(a, tangents[static_cast<size_t>(j)], tangents[static_cast<size_t>(k)],
                            params, fd);
      m(j, k) = v;
      m(k, j) = -v;
    }
  }
  RVec c = m.bdcSvd(Eigen::ComputeThinU | Eigen::ComputeThinV).solve(rhs);
  CMat acc = CMat::Zero(n, n);
  for (int k = 0; k < d; ++k) acc += c(k) * tangents[static_cast<size_t>(k)].alpha();
  return CoalgebraVector(acc, 1e-6);
}

namespace {

CoalgebraVector flow_field(const CoalgebraVector& a, double t, const FlowConfig& config) {
  PoissonParams params = PoissonParams::generic(t, config.u);
  return v_field(a, params, config.fd, config.quad_order);
}

struct StepOut {
  CoalgebraVector point;
  double field_norm = 0.0;
};

StepOut rk4_step(const CoalgebraVector& a, double t, double dt, const FlowConfig& config) {
  CoalgebraVector k1 = flow_field(a, t, config);
  CoalgebraVector k2 =
      flow_field(CoalgebraVector(a.alpha() + 0.5 * dt * k1.alpha(), 1e-8), t + 0.5 * dt, config);
  CoalgebraVector k3 =
      flow_field(CoalgebraVector(a.alpha() + 0.5 * dt * k2.alpha(), 1e-8), t + 0.5 * dt, config);
  CoalgebraVector k4 =
      flow_field(CoalgebraVector(a.alpha() + dt * k3.alpha(), 1e-8), t + dt, config);
  CMat next =
      a.alpha() + (dt / 6.0) * (k1.alpha() + 2.0 * k2.alpha() + 2.0 * k3.alpha() + k4.alpha());
  StepOut out;
  out.point = CoalgebraVector(next, 1e-8);
  out.field_norm = k1.norm();
  return out;
}

FlowTrajectory integrate_one(const CoalgebraVector& seed, const FlowConfig& config,
                             bool keep_points, bool halving) {
  FlowTrajectory traj;
  const double dt = (config.t_end - config.t_start) / config.steps;
  CoalgebraVector cur = seed;
  double t = config.t_start;
  if (keep_points) {
    traj.times.push_back(t);
    traj.points.push_back(cur);
  }
  for (int k = 0; k < config.steps; ++k) {
    StepOut full = rk4_step(cur, t, dt, config);
    traj.max_field_norm = std::max(traj.max_field_norm, full.field_norm);
    if (halving) {
      StepOut h1 = rk4_step(cur, t, 0.5 * dt, config);
      StepOut h2 = rk4_step(h1.point, t + 0.5 * dt, 0.5 * dt, config);
      double err = (h2.point.alpha() - full.point.alpha()).norm();
      traj.max_step_error = std::max(traj.max_step_error, err);
      if (err > config.step_tolerance)
        throw StepSizeUnderflow("integrate_flow: step-halving error exceeds tolerance");
      cur = h2.point;  // keep the finer estimate
    } else {
      cur = full.point;
    }
    t = config.t_start + (k + 1) * dt;
    if (keep_points) {
      traj.times.push_back(t);
      traj.points.push_back(cur);
    }
  }
  if (!keep_points) {
    traj.times.push_back(t);
    traj.points.push_back(cur);
  }
  return traj;
}

}  // namespace

FlowResult integrate_flow(const std::vector<CoalgebraVector>& seeds, const FlowConfig& config) {
  config.validate();
  FlowResult res;
  res.config = config;
  res.trajectories.reserve(seeds.size());
  for (const CoalgebraVector& s : seeds)
    res.trajectories.push_back(integrate_one(s, config, true, config.halving_check));
  return res;
}

CoalgebraVector flow_endpoint(const CoalgebraVector& seed, const FlowConfig& config) {
  config.validate();
  return integrate_one(seed, config, false, false).points.back();
}

SymplectoReport symplecto_residual(const CoalgebraVector& seed, const FlowConfig& config,
                                   int pairs, std::uint64_t pair_seed, double fd_step) {
  config.validate();
  if (pairs < 1) throw ConfigInvalid("symplecto_residual: pairs >= 1 required");
  const int n = seed.dim();
  PoissonParams p_start = PoissonParams::generic(config.t_start, config.u);
  PoissonParams p_end = PoissonParams::generic(config.t_end, config.u);
  OrbitPoint start = make_orbit_point(OrbitKind::dressing, seed, p_start);

  auto endpoint = [&](const CoalgebraVector& s) { return flow_endpoint(s, config); };
  CoalgebraVector center = endpoint(seed);

  std::vector<double> residuals;
  residuals.reserve(static_cast<size_t>(pairs));
  for (int k = 0; k < pairs; ++k) {
    CMat xi = random_su_algebra(n, pair_seed + 2 * static_cast<std::uint64_t>(k));
    CMat eta = random_su_algebra(n, pair_seed + 2 * static_cast<std::uint64_t>(k) + 1);
    double before = dressing_form_eval(start, xi, eta, p_start, config.fd);

    const double h = fd_step * (1.0 + seed.norm());
    auto pushed = [&](const CMat& gen) {
      CoalgebraVector dir = coadjoint_tangent(seed, gen);
      CoalgebraVector plus = endpoint(CoalgebraVector(seed.alpha() + h * dir.alpha(), 1e-8));
      CoalgebraVector minus = endpoint(CoalgebraVector(seed.alpha() - h * dir.alpha(), 1e-8));
      return CoalgebraVector((plus.alpha() - minus.alpha()) / (2.0 * h), 1e-6);
    };
    CoalgebraVector xp = pushed(xi);
    CoalgebraVector yp = pushed(eta);
    CMat xi_end = lift_generator(center, xp, 1e-3);
    CMat eta_end = lift_generator(center, yp, 1e-3);
    double after = kks_eval(center, xi_end, eta_end) + omega_eval(center, xp, yp, p_end, config.fd);
    residuals.push_back(std::abs(after - before) / (1.0 + std::abs(before)));
  }

  std::sort(residuals.begin(), residuals.end());
  SymplectoReport rep;
  rep.pairs = pairs;
  rep.max_relative_residual = residuals.back();
  rep.median_relative_residual = residuals[residuals.size() / 2];
  return rep;
}

}  // namespace plc
