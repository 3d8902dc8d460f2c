#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "plancherel/partitions.hpp"
#include "plancherel/special.hpp"

#include <random>

using namespace plancherel;

TEST_CASE("enumeration order and counts") {
  auto e0 = enumerate(0);
  REQUIRE(e0.size() == 1);
  CHECK(e0[0].empty());
  auto e = enumerate(5, 2);
  // 1+1+2+2+3+3 by hand
  CHECK(e.size() == 12);
  std::vector<Partition> w5;
  for (auto& p : e)
    if (p.weight() == 5) w5.push_back(p);
  REQUIRE(w5.size() == 3);
  CHECK(w5[0] == Partition({5}));
  CHECK(w5[1] == Partition({4, 1}));
  CHECK(w5[2] == Partition({3, 2}));
  CHECK(enumerate(8).size() == 67);
  // weights non-decreasing along the stream
  auto all = enumerate(10);
  for (size_t i = 1; i < all.size(); ++i) CHECK(all[i - 1].weight() <= all[i].weight());
}

TEST_CASE("hooks") {
  Partition l({3, 1, 1});
  auto h = l.hooks(5);
  for (size_t i = 1; i < h.size(); ++i) CHECK(h[i - 1] > h[i]);
  CHECK(h.back() == 0);
  CHECK(l.hooks(3).back() == 1 - 3 + 3);
  CHECK_THROWS(l.hooks(2));
  CHECK_THROWS(Partition({1, 2}));
  CHECK(Partition::from_json(l.to_json()) == l);
  CHECK(l.to_json() == "[3,1,1]");
}

TEST_CASE("plancherel weight") {
  CHECK(plancherel_weight(Partition()) == 1);
  CHECK(plancherel_weight(Partition({1})) == 1);
  BigRational s(0);
  for (auto& p : partitions_of(3)) s += plancherel_weight(p);
  CHECK(s == BigRational(1, 6));
  // hook formula cross-check
  for (auto& p : partitions_of(7)) {
    BigInt H(1);
    for (int x : p.cell_hooks()) H *= x;
    CHECK(plancherel_weight(p) == BigRational(BigInt(1), H * H));
  }
}

TEST_CASE("q weights") {
  CHECK(q_plancherel_weight(Partition()) == QRational());
  Real q = Real(1) / 4;
  CHECK(abs(q_plancherel_weight(Partition({1}), q) - Real(4) / 9) < ulp_scale(250));
  // symbolic vs numeric
  for (auto& p : partitions_of(6)) {
    Real a = q_plancherel_weight(p).eval(sqrt(q));
    Real b = q_plancherel_weight(p, q);
    CHECK(abs(a - b) < ulp_scale(230) * b);
  }
  CHECK_THROWS(q_plancherel_weight(Partition({1}), Real(2)));
}

TEST_CASE("casimirs") {
  Partition l({2, 1});
  auto c = casimirs(l, 2);
  CHECK(c[0] == BigRational(71, 24));
  CHECK(c[1] == 0);
  CHECK(casimirs(Partition(), 1)[0] == BigRational(-1, 24));
  for (auto& p : enumerate(12)) {
    auto cc = casimirs(p, 2);
    CHECK(cc[1] == casimir2(p));
    CHECK(cc[0] == BigRational(p.weight()) - BigRational(1, 24));
  }
}

TEST_CASE("N independence (sample)") {
  std::mt19937 rng(7);
  auto all = enumerate(14);
  for (int it = 0; it < 20; ++it) {
    const auto& p = all[rng() % all.size()];
    int n = p.length();
    CHECK(plancherel_weight(p, n) == plancherel_weight(p, n + 5));
    CHECK(q_plancherel_weight(p, n) == q_plancherel_weight(p, n + 5));
    CHECK(casimirs(p, 6, n) == casimirs(p, 6, n + 5));
  }
}
