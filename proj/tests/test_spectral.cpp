#include <cmath>
#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "subdyn/spectral.hpp"

using namespace subdyn;
using testing::make_sub;

namespace {

bool primitive_oracle(const oracle::Mat& m) {
  const std::size_t n = m.size();
  std::vector<std::vector<bool>> reach(n, std::vector<bool>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) reach[i][j] = m[i][j] > 0;
  auto cur = reach;
  for (int k = 0; k < 200; ++k) {
    bool all = true;
    for (const auto& row : cur)
      for (bool b : row) all = all && b;
    if (all) return true;
    auto next = cur;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        bool any = false;
        for (std::size_t l = 0; l < n; ++l) any = any || (cur[i][l] && reach[l][j]);
        next[i][j] = any;
      }
    cur = next;
  }
  return false;
}

}  // namespace

TEST_CASE("abelianization matrix") {
  const auto m = abelianization_matrix(make_sub(testing::kFibonacci));
  CHECK(m == IntMatrix(2, {1, 1, 1, 0}));
  CHECK(abelianization_matrix(make_sub(testing::kProximal)) == IntMatrix(2, {3, 1, 1, 3}));
}

TEST_CASE("characteristic polynomial oracles") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 150; ++trial) {
    const auto rules = oracle::random_rules(rng, 1 + trial % 4, 5);
    const auto p = characteristic_polynomial(abelianization_matrix(make_sub(rules)));
    const oracle::Poly op(p.coefficients().begin(), p.coefficients().end());
    CHECK(op == oracle::char_poly_leibniz(oracle::matrix(rules)));
    CHECK(oracle::annihilates(op, oracle::matrix(rules)));
  }
}

TEST_CASE("primitivity against boolean powers") {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 200; ++trial) {
    const auto rules = oracle::random_rules(rng, 2 + trial % 4, 3);
    const auto prim = is_primitive(abelianization_matrix(make_sub(rules)));
    CHECK(prim.primitive == primitive_oracle(oracle::matrix(rules)));
    if (prim.primitive) {
      REQUIRE(prim.exponent.has_value());
      const auto pk = abelianization_matrix(make_sub(rules)).power(*prim.exponent);
      for (auto x : pk.data()) CHECK(x > 0);
    }
  }
  CHECK_FALSE(is_primitive(abelianization_matrix(testing::sub("a -> a\nb -> ab"))).primitive);
}

TEST_CASE("classification table") {
  const auto fib = classify(make_sub(testing::kFibonacci));
  CHECK(fib.primitive());
  CHECK(fib.irreducible);
  CHECK(fib.pisot_type == PisotVerdict::Yes);
  CHECK(fib.irreducible_pisot);
  REQUIRE(fib.perron);
  CHECK(std::abs(fib.perron->dilation - (1 + std::sqrt(5.0)) / 2) <= 1e-9);

  const auto trib = classify(make_sub(testing::kTribonacci));
  CHECK(trib.irreducible_pisot);
  CHECK(std::abs(trib.perron->dilation - 1.8392867552141612) <= 1e-9);

  const auto tm = classify(make_sub(testing::kThueMorse));
  CHECK(tm.primitive());
  CHECK_FALSE(tm.irreducible);
  CHECK_FALSE(tm.irreducible_pisot);

  const auto prox = classify(make_sub(testing::kProximal));
  CHECK_FALSE(prox.irreducible);
  REQUIRE(prox.roots.size() == 2);
  CHECK(prox.roots[0].enclosure.center.real() == 4);
  CHECK(prox.roots[1].enclosure.center.real() == 2);
  CHECK(prox.pisot_type == PisotVerdict::No);
  CHECK(prox.dilation_pisot == PisotVerdict::Yes);

  const auto unit = classify(make_sub(testing::kUnitRoot));
  REQUIRE(unit.roots.size() == 2);
  CHECK(unit.roots[1].enclosure.exact);
  CHECK(unit.roots[1].where == UnitCircle::On);
  CHECK(unit.pisot_type == PisotVerdict::No);
}

TEST_CASE("certified dilation error for 2x2 matrices") {
  std::mt19937_64 rng(10);
  for (int trial = 0; trial < 100; ++trial) {
    const auto rules = oracle::random_rules(rng, 2, 5);
    const auto r = classify(make_sub(rules));
    if (!r.primitive()) continue;
    const auto m = oracle::matrix(rules);
    const double tr = static_cast<double>(m[0][0] + m[1][1]);
    const double det = static_cast<double>(m[0][0] * m[1][1] - m[0][1] * m[1][0]);
    const double exact = (tr + std::sqrt(tr * tr - 4 * det)) / 2;
    CHECK(std::abs(r.perron->dilation - exact) <= r.perron->dilation_error + 1e-15 * exact);
    CHECK(r.perron->bracket_low <= exact * (1 + 1e-15));
    CHECK(r.perron->bracket_high >= exact * (1 - 1e-15));
    for (double v : r.perron->vector) CHECK(v > 0);
  }
}

TEST_CASE("classification is invariant under powers") {
  for (const auto& rules : {testing::kFibonacci, testing::kTribonacci, testing::kPair}) {
    const auto sub = make_sub(rules);
    const auto base = classify(sub);
    for (unsigned k : {2u, 3u}) {
      const auto pk = classify(sub.power(k));
      CHECK(pk.primitive() == base.primitive());
      CHECK(pk.irreducible == base.irreducible);
      CHECK(pk.pisot_type == base.pisot_type);
      CHECK(std::abs(pk.perron->dilation - std::pow(base.perron->dilation, k)) <= 1e-8 * pk.perron->dilation);
    }
  }
}

TEST_CASE("overflow is reported") {
  const auto m = abelianization_matrix(testing::sub("a -> aaaaaaaaaa\nb -> ab"));
  CHECK_THROWS_AS(m.power(40), std::overflow_error);
}
