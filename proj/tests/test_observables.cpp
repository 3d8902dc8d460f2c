#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "plancherel/observables.hpp"
#include "plancherel/oracle.hpp"

#include <sstream>

using namespace plancherel;

TEST_CASE("pure limit shape is the arcsine law") {
  auto c = solve_plancherel({});
  Real q(9);
  auto s = limit_shape(c, q, 200);
  CHECK(s.positive);
  CHECK(arcsin_law_deviation(s) < ulp_scale(230));
  // phi = pi/2 -> I = 2 sqrt(q) / pi
  auto one = limit_shape(c, q, 1);
  CHECK(abs(one.points[0].I - 2 * sqrt(q) / pi()) < ulp_scale(240));
}

TEST_CASE("integrated density endpoints") {
  auto c = solve_plancherel({Real("0.2"), Real("0.1")});
  Real q(25);
  CHECK(abs(integrated_density(c, q, Real(0))) < ulp_scale(240));
  CHECK(abs(integrated_density(c, q, pi()) - c.arctic(q)) < ulp_scale(230));
  auto s = limit_shape(c, q, 10, 40L);
  REQUIRE(s.points[0].h.has_value());
  // near phi = 0 the shape approaches the right edge
  CHECK(*s.points[0].h > *s.points[9].h);
}

TEST_CASE("negative density is detected") {
  PlancherelCurve c;
  c.t = {Real(0)};
  c.u = {Real(0), Real(-3)};
  c.gamma = 1;
  CHECK_THROWS_AS(limit_shape(c, Real(4), 10), NegativeDensity);
  auto s = limit_shape(c, Real(4), 10, std::nullopt, true);
  CHECK_FALSE(s.positive);
}

TEST_CASE("shape csv") {
  auto s = limit_shape(solve_plancherel({}), Real(4), 3);
  std::ostringstream os;
  write_shape_csv(s, os);
  std::string out = os.str();
  CHECK(std::count(out.begin(), out.end(), '\n') == 4);
  CHECK(out.rfind("lambda_minus_I,lambda_plus_I\n", 0) == 0);
}

TEST_CASE("density corrections") {
  auto c = std::make_shared<PlancherelCurve>(solve_plancherel({}));
  RecursionEngine e(c, 1);
  auto far = density_corrections(e, 1, {Complex(Real(1000))});
  auto near = density_corrections(e, 1, {Complex(Real(10))});
  CHECK(abs(far[0]) < abs(near[0]) * Real("1e-3"));
  // just above the cut the leading term is the density phi / pi, x = 2 cos phi
  Complex x(2 * cos(Real(1)), Real("1e-20"));
  auto lead = density_corrections(e, 0, {x});
  CHECK(abs(lead[0].real() - Real(1) / pi()) < Real("1e-18"));
  CHECK(abs(lead[0].imag()) < Real("1e-18"));
}

TEST_CASE("conifold GW invariants") {
  auto t = gw_invariants(0, 2, 3);
  auto o = z_qdeformed_series({0, 3, 2});
  for (int g = 0; g <= 2; ++g)
    for (int d = 1; d <= 3; ++d) {
      Real ref = to_real(o.connected(g, d));
      CHECK(abs(t.N[g][d] - ref) < Real("1e-8") * abs(ref));
    }
  CHECK(t.samples == 12);
  CHECK(t.doubling_change < Real("1e-8"));
}

TEST_CASE("GW invariants of X_3 against the oracle, and p -> 2 - p") {
  auto a = gw_invariants(3, 2, 2);
  auto b = gw_invariants(-1, 2, 2);
  auto o = z_qdeformed_series({3, 2, 2});
  for (int g = 0; g <= 2; ++g)
    for (int d = 1; d <= 2; ++d) {
      Real ref = to_real(o.connected(g, d));
      CHECK(abs(a.N[g][d] - ref) < Real("1e-8") * abs(ref));
      CHECK(abs(a.N[g][d] - b.N[g][d]) < Real("1e-8") * abs(ref));
    }
}

TEST_CASE("genus zero series: F0''' for p = 0 is sum Q^k") {
  auto f = xp_f0_series(0, 6);
  // (Q d/dQ)^3 Li3(Q) = sum Q^k; d/dt = -Q d/dQ
  for (int k = 1; k <= 6; ++k) CHECK(f[k] * BigRational(k * k * k) == 1);
  auto g = xp_f0_series(2, 6);
  for (int k = 1; k <= 6; ++k) CHECK(g[k] == f[k]);
}

TEST_CASE("F0'' from the Lagrange side matches the prepotential") {
  // (Q d/dQ)^2 F0 = -ln(1 - 1/z0^2)
  for (int p : {0, 1, 3, 4}) {
    auto f0 = xp_f0_series(p, 6);
    auto r = f0_second_derivative_series(p, 6);
    for (int k = 1; k <= 6; ++k) CHECK(f0[k] * BigRational(k * k) == r.left[k - 1]);
  }
}

TEST_CASE("F0'' Gamma-ratio side") {
  auto r3 = f0_second_derivative_series(3, 5);
  CHECK(r3.right[0] == 1);  // Gamma(4) / (1! Gamma(4))
  CHECK(r3.max_difference == 0);
  auto r1 = f0_second_derivative_series(1, 5);  // continued through the Gamma poles
  for (int k = 1; k <= 5; ++k) CHECK(r1.right[k - 1] == BigRational(k % 2 ? 1 : -1, k));
  CHECK(r1.max_difference == 0);
  CHECK(f0_second_derivative_series(0, 0).left.empty());
}

TEST_CASE("mirror curves") {
  for (int p : {0, 1, 2}) {
    auto m = mirror_curve(p, Real(3));
    REQUIRE(m.specialized.has_value());
    CHECK(mirror_vanishing(m.general, 20, Real(2)) < Real("1e-40"));
    CHECK(mirror_vanishing(*m.specialized, 20, Real(2)) < Real("1e-40"));
    CHECK(mirror_difference(m.general, *m.specialized) < Real("1e-40"));
  }
  for (int p : {3, 4, -2, 5}) {
    auto m = mirror_curve(p, Real(6));
    CHECK_FALSE(m.specialized.has_value());
    CHECK(mirror_vanishing(m.general, 20, Real(2)) < Real("1e-40"));
  }
}

TEST_CASE("the p = -1 specialized form is off the curve") {
  auto m = mirror_curve(-1, Real(3));
  CHECK(mirror_vanishing(m.general, 20, Real(2)) < Real("1e-40"));
  CHECK(mirror_vanishing(*m.specialized, 20, Real(2)) > Real("1e-3"));
}
