#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "plancherel/curve.hpp"

using namespace plancherel;

TEST_CASE("pure curve") {
  auto c = solve_plancherel({});
  CHECK(c.u[0] == 0);
  CHECK(c.gamma == 1);
  CHECK(abs(c.arctic(Real(9)) - 6) < ulp_scale(240));
  Complex z(Real(2), Real(1));
  CHECK(abs(c.x(z) - (z + Complex(1) / z)) < ulp_scale(240));
}

TEST_CASE("t2 curve") {
  Real t2("0.2");
  auto c = solve_plancherel({t2});
  Real u0 = c.u[0];
  // -2 u0 e^{2 u0} = t2^2, u1 = sqrt(-2 u0)
  CHECK(abs(-2 * u0 * exp(2 * u0) - t2 * t2) < Real("1e-60"));
  CHECK(abs(c.u[1] - sqrt(-2 * u0)) < Real("1e-60"));
  CHECK(abs(u0 - Real("-2.0851704218242236949e-02")) < Real("1e-19"));
  auto r = plancherel_residual(c.t, c.u[0], c.u[1]);
  for (const auto& v : r) CHECK(abs(v) < ulp_scale(200));
  CHECK(c.dy_at_branch(1).real() > 0);
  CHECK(c.dy_at_branch(-1).real() < 0);

  Complex z(Real("1.7"), Real("0.4"));
  CHECK(abs(c.x(z) - c.x(Complex(1) / z)) < ulp_scale(240));
  CHECK(abs(c.x(z) - (c.zhukovsky_scale() * (z + Complex(1) / z) + c.zhukovsky_offset())) < ulp_scale(240));
  CHECK(abs(c.z_of_x(c.x(z)) - z) < ulp_scale(200));
}

TEST_CASE("critical coupling is rejected") {
  CHECK_THROWS_AS(solve_plancherel({Real(1)}), OutOfRegime);
}

TEST_CASE("local germs reproduce the curve") {
  auto c = solve_plancherel({Real("0.2"), Real("0.1")});
  for (int a : {1, -1}) {
    auto xg = c.x_germ(a, 30), yg = c.y_germ(a, 30);
    Complex zeta(Real("0.004"), Real("0.008"));
    Complex xs(0), ys(0), p(1);
    for (int m = 0; m < 30; ++m, p *= zeta) {
      xs += xg[m] * p;
      ys += yg[m] * p;
    }
    Complex z = Complex(a) + zeta;
    CHECK(abs(xs - c.x(z)) < Real("1e-50"));
    CHECK(abs(ys - c.y(z)) < Real("1e-50"));
    CHECK(abs(c.delta_y_germ(a, 10)[0]) == 0);
  }
}

TEST_CASE("X_p curve invariants") {
  for (auto [p, t] : std::vector<std::pair<int, int>>{{0, 2}, {1, 2}, {3, 3}, {-1, 4}}) {
    auto c = solve_xp(p, Real(t));
    auto inv = xp_invariants(c);
    CHECK(inv.z0_equation < Real("1e-60"));
    CHECK(inv.T_equation < Real("1e-60"));
    CHECK(inv.gamma_equation < Real("1e-60"));
    CHECK(abs(c.z0) > 1);
  }
  // p = 0: z0 = e^{t/2}
  CHECK(abs(solve_xp(0, Real(2)).z0 - Complex(exp(Real(1)))) < ulp_scale(240));
  // p = 1: z0^2 - 1 = e^t
  auto c1 = solve_xp(1, Real(2));
  CHECK(abs(c1.z0 * c1.z0 - Complex(1 + exp(Real(2)))) < ulp_scale(230));
}

TEST_CASE("p and 2 - p share z0") {
  CHECK(abs(solve_xp(3, Real(3)).z0 - solve_xp(-1, Real(3)).z0) < ulp_scale(240));
}

TEST_CASE("complex path agrees with the real solve") {
  auto r = solve_xp(3, Real(4));
  auto c = solve_xp_complex(3, Complex(exp(Real(-4))));
  CHECK(abs(r.z0 - c.z0) < ulp_scale(220));
  CHECK(abs(r.T - c.T) < ulp_scale(220));
}

TEST_CASE("X_p beyond the conifold point is out of regime") {
  CHECK_THROWS_AS(solve_xp(3, Real(2)), OutOfRegime);
}

TEST_CASE("Lagrange series of 1/z0^2") {
  auto w = xp_w_series(3, 5);
  // k = 1: 1, k = 2: (2*3)/2 = 3, k = 3: (9*10)/6 = 15
  CHECK(w[1] == 1);
  CHECK(w[2] == 3);
  CHECK(w[3] == 15);
  auto w0 = xp_w_series(0, 6);
  for (int k = 2; k < 6; ++k) CHECK(w0[k] == 0);
}

TEST_CASE("loop equation residual is below the first omitted term") {
  auto c = solve_plancherel({Real("0.2")});
  for (const auto& s : loop_residual(c, cut_samples(c, 10), Real(100), 4)) CHECK(s.residual < s.first_omitted);
  auto x = solve_xp(0, Real(3));
  for (const auto& s : loop_residual(x, cut_samples(x, 10), Real("0.1"), 3)) CHECK(s.residual < s.first_omitted);
}
