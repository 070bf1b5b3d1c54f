#include "plc/forms.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace plc {

namespace {

Complex phi_spectral(Complex lam, double t) {
  const Complex z(0.0, 2.0 * t);
  if (std::abs(lam) < 1e-6) {
    // series fallback near the removable singularity
    Complex term = z * z / 2.0;
    Complex sum = term;
    Complex p = lam;
    double fact = 6.0;
    for (int m = 1; m <= 4; ++m) {
      sum += std::pow(z, m + 2) * p / fact;
      p *= lam;
      fact *= static_cast<double>(m + 3);
    }
    return sum;
  }
  return (std::exp(z * lam) - 1.0 - z * lam) / (lam * lam);
}

struct AdSpectral {
  CMat vectors;            // U with alpha = U diag(i theta) U^H... see below
  Eigen::VectorXcd eigen;  // eigenvalues of alpha (purely imaginary)

  explicit AdSpectral(const CMat& alpha) {
    Eigen::SelfAdjointEigenSolver<CMat> es(Complex(0, 1) * alpha);
    vectors = es.eigenvectors();
    eigen = Complex(0, -1) * es.eigenvalues().cast<Complex>();
  }

  // phi(ad(alpha)) X, entrywise in the eigenbasis
  CMat apply_phi(const CMat& x, double t) const {
    CMat xp = vectors.adjoint() * x * vectors;
    const Eigen::Index n = xp.rows();
    for (Eigen::Index j = 0; j < n; ++j)
      for (Eigen::Index k = 0; k < n; ++k) xp(j, k) *= phi_spectral(eigen(j) - eigen(k), t);
    return vectors * xp * vectors.adjoint();
  }
};

double omega1_from_spectral(const AdSpectral& ad, const CMat& xi, const CMat& eta, double t) {
  CMat pxi = ad.apply_phi(xi, t);
  CMat peta = ad.apply_phi(eta, t);
  Complex val = (killing(pxi, eta) - killing(peta, xi)) / Complex(0.0, 4.0 * t);
  return val.real();
}

double spatial_step(const FdConfig& fd, const CoalgebraVector& a) {
  return fd.spatial * (1.0 + a.norm());
}

}  // namespace

double omega1_eval(const CoalgebraVector& a, const CoalgebraVector& x, const CoalgebraVector& y,
                   double t) {
  AdSpectral ad(a.alpha());
  return omega1_from_spectral(ad, x.alpha(), y.alpha(), t);
}

double omega2_eval(const CoalgebraVector& a, const CoalgebraVector& x, const CoalgebraVector& y,
                   const PoissonParams& params, const FdConfig& fd) {
  const double h = spatial_step(fd, a);
  CMat emb = e_map(a, params).embedding();
  CMat dx = e_push(a, x, params, h);
  CMat dy = e_push(a, y, params, h);
  CMat inv = emb.inverse();
  CMat adj_inv = inv.adjoint();
  Complex val = (killing(inv * dx, dy.adjoint() * adj_inv) -
                 killing(inv * dy, dx.adjoint() * adj_inv)) /
                Complex(0.0, 4.0 * params.t);
  return val.real();
}

double omega_eval(const CoalgebraVector& a, const CoalgebraVector& x, const CoalgebraVector& y,
                  const PoissonParams& params, const FdConfig& fd) {
  return omega1_eval(a, x, y, params.t) + omega2_eval(a, x, y, params, fd);
}

double omega_w_eval(const SpecialChart&, const SpecialChart& x, const SpecialChart& y,
                    const CartanForm& w) {
  const int r = w.rank();
  RVec xc = x.h_coords.head(r);
  RVec yc = y.h_coords.head(r);
  return 0.5 * (w.form_value(xc, yc) - w.form_value(yc, xc));
}

double ext_deriv_residual(const Form2& form, const CoalgebraVector& a, const CoalgebraVector& x,
                          const CoalgebraVector& y, const CoalgebraVector& z, double step) {
  auto deriv = [&](const CoalgebraVector& dir, const CoalgebraVector& u,
                   const CoalgebraVector& v) {
    CoalgebraVector plus(a.alpha() + step * dir.alpha(), 1e-6);
    CoalgebraVector minus(a.alpha() - step * dir.alpha(), 1e-6);
    return (form(plus, u, v) - form(minus, u, v)) / (2.0 * step);
  };
  return std::abs(deriv(x, y, z) - deriv(y, x, z) + deriv(z, x, y));
}

CoalgebraVector universal_field(const CoalgebraVector& a, const CMat& eps) {
  return CoalgebraVector(eps * a.alpha() - a.alpha() * eps, 1e-8);
}

SpecialChart special_universal_field(const SpecialChart& a, const CMat& eps) {
  CMat body = a.body();
  CMat br = eps * body - body * eps;
  // split sl(n,C) = su(n) + {real diag + strict upper}; keep the second part
  const Eigen::Index n = br.rows();
  SpecialChart out;
  out.h_coords = RVec(n);
  for (Eigen::Index k = 0; k < n; ++k) out.h_coords(k) = -br(k, k).real();
  CMat lower = br.triangularView<Eigen::StrictlyLower>();
  out.upper = CMat(br.triangularView<Eigen::StrictlyUpper>()) + lower.adjoint();
  return out;
}

double contraction_residual(const CoalgebraVector& a, const CMat& eps, const CoalgebraVector& x,
                            const PoissonParams& params, const FdConfig& fd) {
  CoalgebraVector v = universal_field(a, eps);
  double lhs = omega_eval(a, x, v, params, fd);
  CMat emb = e_map(a, params).embedding();
  CMat dx = e_push(a, x, params, spatial_step(fd, a));
  double rhs = (1.0 / params.t) * im_killing(dx * emb.inverse(), eps) -
               dual_pairing(x.alpha(), eps);
  return std::abs(lhs - rhs);
}

double contraction_residual_special(const SpecialChart& a, const CMat& eps, const SpecialChart& x,
                                    const CartanForm& w) {
  SpecialChart v = special_universal_field(a, eps);
  double lhs = omega_w_eval(a, x, v, w);
  SpecialDualElement elem{a, CMat(), w};
  auto mc = mc_form_special(elem, x);
  // e_w^* dA A^{-1} - da = -[w(dh), n]
  CMat diff = mc.first - x.body();
  double rhs = im_killing(diff, eps);
  return std::abs(lhs - rhs);
}

Quadrature gauss_legendre_01(int order) {
  // Newton iteration on Legendre polynomials, then map [-1,1] -> [0,1].
  Quadrature q;
  q.nodes = RVec(order);
  q.weights = RVec(order);
  for (int i = 0; i < order; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (order + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= order; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = order * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    q.nodes(i) = 0.5 * (1.0 + x);
    q.weights(i) = 1.0 / ((1.0 - x * x) * dp * dp);  // already halved by the affine map
  }
  return q;
}

namespace {

double primitive_with_order(const CoalgebraVector& a, const CoalgebraVector& x,
                            const PoissonParams& params, const FdConfig& fd, int order) {
  Quadrature q = gauss_legendre_01(order);
  double sum = 0.0;
  for (int i = 0; i < order; ++i) {
    double s = q.nodes(i);
    CoalgebraVector base(s * a.alpha(), 1e-8);
    sum += q.weights(i) * s * omega_eval(base, a, x, params, fd);
  }
  return sum;
}

}  // namespace

double primitive_eval(const CoalgebraVector& a, const CoalgebraVector& x,
                      const PoissonParams& params, const FdConfig& fd) {
  double prev = primitive_with_order(a, x, params, fd, 16);
  for (int order : {32, 64}) {
    double next = primitive_with_order(a, x, params, fd, order);
    if (std::abs(next - prev) < 1e-10) return next;
    prev = next;
  }
  return prev;
}

namespace {

PoissonParams with_t(const PoissonParams& params, double t) {
  return PoissonParams::generic(t, params.u);
}

double default_dt(const PoissonParams& params, double dt_step) {
  return dt_step > 0.0 ? dt_step : 1e-4 * (1.0 + std::abs(params.t));
}

void check_t_probes(const PoissonParams& params, double dt) {
  double lo = std::abs(params.t) - dt;
  if (lo < tol::t_min || (params.t + dt) * (params.t - dt) <= 0.0)
    throw ParamOutOfRange("beta_eval: t probe crosses the t=0 exclusion zone");
}

}  // namespace

double beta_eval(const CoalgebraVector& a, const CoalgebraVector& x, const PoissonParams& params,
                 double dt_step, const FdConfig& fd) {
  const double dt = default_dt(params, dt_step);
  check_t_probes(params, dt);
  double plus = primitive_eval(a, x, with_t(params, params.t + dt), fd);
  double minus = primitive_eval(a, x, with_t(params, params.t - dt), fd);
  return (plus - minus) / (2.0 * dt);
}

RVec beta_batch(const CoalgebraVector& a, const std::vector<CoalgebraVector>& probes,
                const PoissonParams& params, double dt_step, const FdConfig& fd, int quad_order) {
  const double dt = default_dt(params, dt_step);
  check_t_probes(params, dt);
  Quadrature q = gauss_legendre_01(quad_order);
  const double h = spatial_step(fd, a);
  RVec acc = RVec::Zero(static_cast<Eigen::Index>(probes.size()));

  for (int side = 0; side < 2; ++side) {
    const double t = params.t + (side == 0 ? dt : -dt);
    PoissonParams pt = with_t(params, t);
    const double sgn = side == 0 ? 1.0 : -1.0;
    for (int i = 0; i < quad_order; ++i) {
      const double s = q.nodes(i);
      CoalgebraVector base(s * a.alpha(), 1e-8);
      AdSpectral ad(base.alpha());
      CMat emb = e_map(base, pt).embedding();
      CMat inv = emb.inverse();
      CMat adj_inv = inv.adjoint();
      CMat da = e_push(base, a, pt, h);
      CMat pa = ad.apply_phi(a.alpha(), t);
      const Complex denom(0.0, 4.0 * t);
      for (size_t j = 0; j < probes.size(); ++j) {
        const CMat& xi = probes[j].alpha();
        CMat pxi = ad.apply_phi(xi, t);
        double o1 = ((killing(pa, xi) - killing(pxi, a.alpha())) / denom).real();
        CMat dx = e_push(base, probes[j], pt, h);
        double o2 = ((killing(inv * da, dx.adjoint() * adj_inv) -
                      killing(inv * dx, da.adjoint() * adj_inv)) /
                     denom)
                        .real();
        acc(static_cast<Eigen::Index>(j)) += sgn * q.weights(i) * s * (o1 + o2);
      }
    }
  }
  return acc / (2.0 * dt);
}

}  // namespace plc
