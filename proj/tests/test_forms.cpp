#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "oracles.hpp"
#include "plc/harness.hpp"

using namespace plc;

namespace {

SpecialChart chart3(unsigned seed) {
  std::mt19937 gen(seed);
  std::normal_distribution<double> dist(0.0, 1.0);
  SpecialChart c;
  c.h_coords = RVec(3);
  for (int k = 0; k < 3; ++k) c.h_coords(k) = dist(gen);
  c.h_coords.array() -= c.h_coords.mean();
  c.upper = CMat::Zero(3, 3);
  c.upper(0, 1) = Complex(dist(gen), dist(gen));
  c.upper(0, 2) = Complex(dist(gen), dist(gen));
  c.upper(1, 2) = Complex(dist(gen), dist(gen));
  return c;
}

}  // namespace

TEST_CASE("first summand: closed form vs truncated series") {
  for (int n : {2, 3}) {
    for (double t : {0.1, 0.5, 1.0}) {
      for (unsigned s = 0; s < 15; ++s) {
        CoalgebraVector a(random_su_algebra(n, 3 * s));
        CoalgebraVector x(random_su_algebra(n, 3 * s + 1));
        CoalgebraVector y(random_su_algebra(n, 3 * s + 2));
        double closed = omega1_eval(a, x, y, t);
        double series = oracle::omega1_series(a, x, y, t);
        CHECK(std::abs(closed - series) <= 1e-12 * (1.0 + std::abs(series)));
      }
    }
  }
}

TEST_CASE("first summand: structural zeros and antisymmetry") {
  CoalgebraVector x(random_su_algebra(2, 1)), y(random_su_algebra(2, 2));
  CHECK(std::abs(omega1_eval(CoalgebraVector::zero(2), x, y, 0.5)) < 1e-14);
  CoalgebraVector a(random_su_algebra(2, 3));
  CHECK(omega1_eval(a, x, x, 0.5) == doctest::Approx(0.0));
  CHECK(omega1_eval(a, x, y, 0.5) == doctest::Approx(-omega1_eval(a, y, x, 0.5)));
}

TEST_CASE("second summand") {
  PoissonParams params = PoissonParams::generic(0.5, CartanForm::zero(1));
  CoalgebraVector a(random_su_algebra(2, 4));
  CoalgebraVector x(random_su_algebra(2, 5));
  SUBCASE("antisymmetry within FD budget") {
    CHECK(std::abs(omega2_eval(a, x, x, params)) < 1e-10);
  }
  SUBCASE("commuting Cartan data collapses the wedge") {
    CMat h = CMat::Zero(2, 2);
    h(0, 0) = Complex(0, 0.7);
    h(1, 1) = Complex(0, -0.7);
    CoalgebraVector ha(h), hx(CMat(0.3 * h)), hy(CMat(-1.1 * h));
    CHECK(std::abs(omega2_eval(ha, hx, hy, params)) < 1e-10);
  }
  SUBCASE("refining the FD step converges") {
    CoalgebraVector y(random_su_algebra(2, 6));
    FdConfig c1{4e-3, 1e-4}, c2{2e-3, 1e-4}, c3{1e-3, 1e-4};
    double v1 = omega2_eval(a, x, y, params, c1);
    double v2 = omega2_eval(a, x, y, params, c2);
    double v3 = omega2_eval(a, x, y, params, c3);
    CHECK(std::abs(v2 - v3) < std::abs(v1 - v2));
    CHECK(std::abs(v1 - v2) < 1e-7);
  }
}

TEST_CASE("full form") {
  PoissonParams params = PoissonParams::generic(0.7, CartanForm::zero(1));
  CoalgebraVector a(random_su_algebra(2, 7));
  CoalgebraVector x(random_su_algebra(2, 8));
  CoalgebraVector y(random_su_algebra(2, 9));
  SUBCASE("bilinear and antisymmetric") {
    double xy = omega_eval(a, x, y, params);
    CHECK(omega_eval(a, y, x, params) == doctest::Approx(-xy).epsilon(1e-9));
    CoalgebraVector x2(CMat(2.0 * x.alpha()));
    CHECK(omega_eval(a, x2, y, params) == doctest::Approx(2.0 * xy).epsilon(1e-7));
  }
  SUBCASE("first summand drops out at the origin") {
    CoalgebraVector o = CoalgebraVector::zero(2);
    double full = omega_eval(o, x, y, params);
    CHECK(full == doctest::Approx(omega2_eval(o, x, y, params)).epsilon(1e-10));
    CHECK(std::abs(omega1_eval(o, x, y, params.t)) < 1e-14);
  }
  SUBCASE("closedness on random triples") {
    Form2 form = [&](const CoalgebraVector& b, const CoalgebraVector& p,
                     const CoalgebraVector& q) { return omega_eval(b, p, q, params); };
    for (unsigned s = 0; s < 10; ++s) {
      CoalgebraVector b(random_su_algebra(2, 20 + 4 * s));
      CoalgebraVector p(random_su_algebra(2, 21 + 4 * s));
      CoalgebraVector q(random_su_algebra(2, 22 + 4 * s));
      CoalgebraVector r(random_su_algebra(2, 23 + 4 * s));
      CHECK(ext_deriv_residual(form, b, p, q, r, 1.25e-4) <= 1e-5 * (1.0 + b.norm()));
    }
  }
}

TEST_CASE("constant-coefficient Cartan form") {
  CartanForm w0 = CartanForm::zero(2);
  RMat m(2, 2);
  m << 0.0, 1.0, -1.0, 0.0;
  CartanForm w(m);
  SpecialChart a = chart3(1);

  SUBCASE("zero form and nilpotent directions") {
    SpecialChart x = chart3(2), y = chart3(3);
    CHECK(omega_w_eval(a, x, y, w0) == doctest::Approx(0.0));
    SpecialChart nx = x, ny = y;
    nx.h_coords.setZero();
    ny.h_coords.setZero();
    CHECK(omega_w_eval(a, nx, ny, w) == doctest::Approx(0.0));
  }
  SUBCASE("unit Cartan directions evaluate the bilinear form") {
    SpecialChart e1 = SpecialChart::zero(3), e2 = SpecialChart::zero(3);
    // chart directions (1,0) and (0,1), trace-completed
    e1.h_coords = cartan_full((RVec(2) << 1.0, 0.0).finished(), 3);
    e2.h_coords = cartan_full((RVec(2) << 0.0, 1.0).finished(), 3);
    CHECK(omega_w_eval(a, e1, e2, w) == doctest::Approx(m(0, 1)));
  }
  SUBCASE("exterior derivative vanishes identically") {
    // constant coefficients: the difference quotients cancel exactly
    SpecialChart x = chart3(4), y = chart3(5), z = chart3(6);
    const double h = 1e-3;
    auto shifted = [&](const SpecialChart& dir, double sgn) {
      SpecialChart out;
      out.h_coords = a.h_coords + sgn * h * dir.h_coords;
      out.upper = a.upper + sgn * h * dir.upper;
      return out;
    };
    auto deriv = [&](const SpecialChart& dir, const SpecialChart& p, const SpecialChart& q) {
      return (omega_w_eval(shifted(dir, 1.0), p, q, w) -
              omega_w_eval(shifted(dir, -1.0), p, q, w)) /
             (2.0 * h);
    };
    CHECK(std::abs(deriv(x, y, z) - deriv(y, x, z) + deriv(z, x, y)) <= 1e-12);
  }
}

TEST_CASE("exterior derivative residual on constant forms") {
  Form2 constant = [](const CoalgebraVector&, const CoalgebraVector& x,
                      const CoalgebraVector& y) {
    return im_killing(x.alpha(), CMat(y.alpha() * Complex(0, 1)));
  };
  CoalgebraVector a(random_su_algebra(2, 30)), x(random_su_algebra(2, 31)),
      y(random_su_algebra(2, 32)), z(random_su_algebra(2, 33));
  CHECK(ext_deriv_residual(constant, a, x, y, z, 1e-4) <= 1e-12);
}

TEST_CASE("contraction identity, generic family") {
  SUBCASE("trivial directions") {
    PoissonParams params = PoissonParams::generic(0.5, CartanForm::zero(1));
    CoalgebraVector a(random_su_algebra(2, 40)), x(random_su_algebra(2, 41));
    CHECK(contraction_residual(a, CMat::Zero(2, 2), x, params) < 1e-10);
  }
  SUBCASE("random samples across families") {
    for (int n : {2, 3}) {
      CartanForm u = n == 2 ? CartanForm::zero(1) : random_cartan_form(2, 19);
      PoissonParams params = PoissonParams::generic(0.5, u);
      for (unsigned s = 0; s < 10; ++s) {
        CoalgebraVector a(random_su_algebra(n, 50 + 3 * s));
        CoalgebraVector x(random_su_algebra(n, 51 + 3 * s));
        CMat eps = random_su_algebra(n, 52 + 3 * s);
        double scale = (1.0 + a.norm()) * (1.0 + x.norm()) * (1.0 + eps.norm());
        CHECK(contraction_residual(a, eps, x, params) <= 1e-6 * scale);
      }
    }
  }
}

TEST_CASE("contraction identity, constant-coefficient family") {
  RMat m(2, 2);
  m << 0.0, 0.8, -0.8, 0.0;
  CartanForm w(m);
  SUBCASE("trivial cases") {
    SpecialChart a = chart3(8), x = chart3(9);
    CHECK(contraction_residual_special(a, random_su_algebra(3, 60), x, CartanForm::zero(2)) <
          1e-12);
    SpecialChart ca = SpecialChart::zero(3), cx = SpecialChart::zero(3);
    ca.h_coords = cartan_full((RVec(2) << 0.3, -0.2).finished(), 3);
    cx.h_coords = cartan_full((RVec(2) << -0.1, 0.4).finished(), 3);
    CMat eps_cartan = cartan_matrix(cartan_full((RVec(2) << 1.0, 0.5).finished(), 3));
    CHECK(contraction_residual_special(ca, eps_cartan, cx, w) < 1e-12);
  }
  SUBCASE("random samples are exact") {
    for (unsigned s = 0; s < 20; ++s) {
      SpecialChart a = chart3(100 + s), x = chart3(200 + s);
      CMat eps = random_su_algebra(3, 300 + s);
      CHECK(contraction_residual_special(a, eps, x, w) <= 1e-12);
    }
  }
}

TEST_CASE("radial primitive and its t-derivative") {
  PoissonParams params = PoissonParams::generic(0.5, CartanForm::zero(1));
  CoalgebraVector a(random_su_algebra(2, 70)), x(random_su_algebra(2, 71)),
      y(random_su_algebra(2, 72));
  SUBCASE("structural zeros") {
    CHECK(std::abs(primitive_eval(CoalgebraVector::zero(2), x, params)) < 1e-12);
    CHECK(std::abs(primitive_eval(a, a, params)) < 1e-12);
    CHECK(std::abs(beta_eval(CoalgebraVector::zero(2), x, params)) < 1e-10);
  }
  SUBCASE("differentiates back to the form") {
    const double h = 1e-4;
    auto prim = [&](const CoalgebraVector& base, const CoalgebraVector& dir) {
      return primitive_eval(base, dir, params);
    };
    auto d_along = [&](const CoalgebraVector& dir, const CoalgebraVector& probe) {
      CoalgebraVector plus(a.alpha() + h * dir.alpha(), 1e-6);
      CoalgebraVector minus(a.alpha() - h * dir.alpha(), 1e-6);
      return (prim(plus, probe) - prim(minus, probe)) / (2.0 * h);
    };
    double d_prim = d_along(x, y) - d_along(y, x);
    CHECK(std::abs(d_prim - omega_eval(a, x, y, params)) <= 1e-5 * (1.0 + a.norm()));
  }
  SUBCASE("linearity of the t-derivative") {
    double bx = beta_eval(a, x, params);
    double by = beta_eval(a, y, params);
    CoalgebraVector comb(CMat(2.0 * x.alpha() - 0.5 * y.alpha()));
    CHECK(beta_eval(a, comb, params) == doctest::Approx(2.0 * bx - 0.5 * by).epsilon(1e-9));
  }
  SUBCASE("t-step refinement converges at second order") {
    double b1 = beta_eval(a, x, params, 8e-3);
    double b2 = beta_eval(a, x, params, 4e-3);
    double b3 = beta_eval(a, x, params, 2e-3);
    double r = std::abs(b1 - b2) / std::abs(b2 - b3);
    CHECK(r > 2.5);
    CHECK(r < 6.0);
  }
  SUBCASE("probes may not cross the excluded region") {
    PoissonParams tiny = PoissonParams::generic(1e-5, CartanForm::zero(1));
    CHECK_THROWS_AS(beta_eval(a, x, tiny, 1e-4), ParamOutOfRange);
  }
  SUBCASE("batched evaluation agrees with the scalar path") {
    std::vector<CoalgebraVector> probes{x, y};
    RVec batch = beta_batch(a, probes, params);
    CHECK(batch(0) == doctest::Approx(beta_eval(a, x, params)).epsilon(1e-8));
    CHECK(batch(1) == doctest::Approx(beta_eval(a, y, params)).epsilon(1e-8));
  }
}

TEST_CASE("quadrature rule") {
  for (int order : {5, 16}) {
    Quadrature q = gauss_legendre_01(order);
    CHECK(q.weights.sum() == doctest::Approx(1.0));
    for (int deg = 0; deg <= 2 * order - 1; ++deg) {
      double integral = 0.0;
      for (int i = 0; i < order; ++i) integral += q.weights(i) * std::pow(q.nodes(i), deg);
      CHECK(integral == doctest::Approx(1.0 / (deg + 1)).epsilon(1e-12));
    }
  }
}

TEST_CASE("universal fields") {
  CoalgebraVector a(random_su_algebra(3, 80));
  CMat eps = random_su_algebra(3, 81);
  SUBCASE("matches the FD derivative of the group action") {
    auto curve = [&](double s) {
      return coadjoint_act(oracle::anti_herm_exp(s * eps), a).alpha();
    };
    CMat fd = fd_pushforward_mat(curve, 1e-4);
    CHECK((universal_field(a, eps).alpha() - fd).norm() <= 1e-8 * (1.0 + a.norm()));
  }
  SUBCASE("constant-coefficient family: complement projection") {
    SpecialChart c = chart3(11);
    SpecialChart v = special_universal_field(c, eps);
    // residue [eps, body] - v.body() must lie in su(n)
    CMat br = eps * c.body() - c.body() * eps;
    CMat rem = br - v.body();
    CHECK(is_anti_hermitian(rem, 1e-10));
    CHECK(is_traceless(rem, 1e-10));
  }
}
