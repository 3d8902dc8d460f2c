#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "plancherel/oracle.hpp"
#include "plancherel/partitions.hpp"

using namespace plancherel;

TEST_CASE("plancherel sum without couplings is e^q") {
  auto s = z_plancherel({Real(1), {}, -1, 20});
  CHECK(abs(s.value - exp(Real(1))) < 2 * s.last_shell);
  CHECK(s.last_shell < Real("1e-18"));

  auto zero = z_plancherel({Real(0), {}, -1, 5});
  CHECK(zero.value == 1);
}

TEST_CASE("single row sum is the Bessel series") {
  // N = 1: P((k)) = 1/k!^2
  auto s = z_plancherel({Real(1), {}, 1, 30});
  Real ref = 0, term = 1;
  for (int k = 0; k <= 30; ++k) {
    ref += term;
    term /= Real(k + 1) * (k + 1);
  }
  CHECK(abs(s.value - ref) < ulp_scale(240));
}

TEST_CASE("t2 weight agrees with a direct sum over partitions") {
  Real q("2.5"), t2("0.3");
  auto s = z_plancherel({q, {t2}, -1, 12});
  Real ref = 0;
  for (const auto& l : enumerate(12)) {
    Real c2 = casimir2(l);
    CHECK(casimirs(l, 2)[1] - casimirs(Partition(), 2)[1] == BigRational(c2.convert_to<long>()));
    ref += to_real(plancherel_weight(l)) * pow(q, l.weight()) * exp(-t2 / sqrt(q) * c2 / 2);
  }
  CHECK(abs(s.value - ref) < ulp_scale(230) * ref);
}

TEST_CASE("mean length agrees with a direct sum") {
  Real q(3);
  auto m = mean_length(q, 18);
  Real z = 0, n = 0;
  for (const auto& l : enumerate(18)) {
    Real w = to_real(plancherel_weight(l)) * pow(q, l.weight());
    z += w;
    n += w * l.length();
  }
  CHECK(abs(m.mean - n / z) < ulp_scale(230));
  CHECK(abs(m.z - z) < ulp_scale(230) * z);
}

TEST_CASE("conifold series") {
  auto r = z_qdeformed_series({0, 3, 2});
  CHECK(r.connected(0, 1) == 1);
  CHECK(r.connected(0, 2) == BigRational(1, 8));
  CHECK(r.connected(1, 1) == BigRational(-1, 12));
  CHECK(r.connected(1, 3) == BigRational(-1, 36));
  CHECK(r.connected(2, 1) == BigRational(1, 240));
  CHECK(r.connected(2, 3) == BigRational(1, 80));
}

TEST_CASE("q-deformed series is symmetric under p -> 2 - p") {
  auto a = z_qdeformed_series({3, 2, 2}), b = z_qdeformed_series({-1, 2, 2});
  for (int g = 0; g <= 2; ++g)
    for (int d = 1; d <= 2; ++d) CHECK(a.connected(g, d) == b.connected(g, d));
}

TEST_CASE("thread count does not change results") {
  set_oracle_threads(1);
  auto a = z_plancherel({Real(4), {Real("0.2")}, -1, 25});
  set_oracle_threads(3);
  auto b = z_plancherel({Real(4), {Real("0.2")}, -1, 25});
  set_oracle_threads(1);
  CHECK(a.value == b.value);
  CHECK(a.partitions == b.partitions);
}
