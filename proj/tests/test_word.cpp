#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "subdyn/errors.hpp"
#include "subdyn/spectral.hpp"

using namespace subdyn;
using testing::make_sub;

TEST_CASE("alphabet validation") {
  CHECK_THROWS_AS(Alphabet(""), InputError);
  CHECK_THROWS_AS(Alphabet("aba"), InputError);
  Alphabet ab("ab");
  CHECK(ab.size() == 2);
  CHECK(ab.parse("abba") == Word{0, 1, 1, 0});
  CHECK(ab.render(Word{1, 0}) == "ba");
  CHECK_THROWS_AS(ab.parse("abc"), InputError);
}

TEST_CASE("substitution validation") {
  Alphabet ab("ab");
  CHECK_THROWS_AS(Substitution(ab, {Word{0}}), InputError);
  CHECK_THROWS_AS(Substitution(ab, {Word{0}, Word{}}), InputError);
  CHECK_THROWS_AS(Substitution(ab, {Word{0}, Word{2}}), InputError);
  const auto fib = make_sub(testing::kFibonacci);
  CHECK_THROWS_AS(fib.apply(Word{0}, 0), InputError);
}

TEST_CASE("abelianize") {
  const Alphabet ab("ab");
  CHECK(abelianize(ab.parse("abaab"), 2).counts() == std::vector<std::int64_t>{3, 2});
  CHECK(abelianize(Word{}, 2).is_zero());
  CHECK(abelian_equivalent(ab.parse("aab"), ab.parse("baa"), 2));
  CHECK_FALSE(abelian_equivalent(ab.parse("aab"), ab.parse("abb"), 2));
  CHECK_THROWS_AS(abelianize(Word{0, 5}, 2), InputError);
}

TEST_CASE("abelianize long words against oracle") {
  std::mt19937_64 rng(11);
  for (std::size_t letters : {2, 3, 4, 7}) {
    const std::string alphabet = std::string("abcdefg").substr(0, letters);
    const oracle::Rules r{alphabet, std::vector<std::string>(letters, "a")};
    for (const auto& w : oracle::random_words(rng, alphabet, 20, 5000)) {
      CHECK(abelianize(Alphabet(alphabet).parse(w), letters).counts() == oracle::abelian(r, w));
    }
  }
}

TEST_CASE("apply matches string expansion") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const auto rules = oracle::random_rules(rng, 2 + trial % 3, 4);
    const auto sub = make_sub(rules);
    for (const auto& w : oracle::random_words(rng, rules.alphabet, 3, 6)) {
      for (int k = 1; k <= 3; ++k) {
        CHECK(sub.alphabet().render(sub.apply(sub.alphabet().parse(w), k)) == oracle::apply(rules, w, k));
      }
    }
    CHECK(sub.power(3).images() == sub.power(1).power(3).images());
  }
}

TEST_CASE("fixed point prefixes") {
  const auto fib = make_sub(testing::kFibonacci);
  FixedPointStream x(fib, 0);
  CHECK(fib.alphabet().render(x.expand(30)) == "abaababaabaababaababaabaababaa");
  CHECK(x.at(1000) == fib.alphabet().letter(oracle::fixed_point(testing::kFibonacci, 'a', 1001)[1000]));
  CHECK_THROWS_AS(FixedPointStream(fib, 1), InputError);

  const auto tm = make_sub(testing::kThueMorse);
  FixedPointStream t0(tm, 0), t1(tm, 1);
  CHECK(tm.alphabet().render(t0.expand(16)) == "abbabaabbaababba");
  CHECK(tm.alphabet().render(t1.expand(8)) == "baababba");
}

TEST_CASE("periodic seeds") {
  const auto fib = make_sub(testing::kFibonacci);
  auto seeds = list_periodic_seeds(fib, 8);
  REQUIRE(seeds.size() == 1);
  CHECK(seeds[0] == PeriodicSeed{0, 1});

  // a -> b, b -> ab: neither letter starts its own image; tau^2(a) = ab, tau^2(b) = bab.
  const auto swap = testing::sub("a -> b\nb -> ab");
  seeds = list_periodic_seeds(swap, 8);
  REQUIRE(seeds.size() == 2);
  CHECK(seeds[0] == PeriodicSeed{0, 2});
  CHECK(seeds[1] == PeriodicSeed{1, 2});
  FixedPointStream x(swap, 0, 2);
  CHECK(swap.alphabet().render(x.expand(13)) == oracle::fixed_point({"ab", {"b", "ab"}}, 'a', 13, 2));

  // Nongrowing letter never seeds.
  const auto fixed = testing::sub("a -> a\nb -> ba");
  seeds = list_periodic_seeds(fixed, 8);
  REQUIRE(seeds.size() == 1);
  CHECK(seeds[0].letter == 1);
}

TEST_CASE("commutation with the abelianization matrix") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 200; ++trial) {
    const auto rules = oracle::random_rules(rng, 2 + trial % 4, 4);
    const auto sub = make_sub(rules);
    const auto m = oracle::matrix(rules);
    const auto w = oracle::random_words(rng, rules.alphabet, 1, 10)[0];
    auto v = oracle::abelian(rules, w);
    const int k = 1 + trial % 4;
    for (int i = 0; i < k; ++i) v = oracle::mul(m, v);
    CHECK(abelianize(sub.apply(sub.alphabet().parse(w), k), sub.size()).counts() == v);
    CHECK((abelianization_matrix(sub).power(k) * abelianize(sub.alphabet().parse(w), sub.size())).counts() == v);
  }
}

TEST_CASE("stream only grows") {
  const auto trib = make_sub(testing::kTribonacci);
  FixedPointStream x(trib, 0);
  const Word first = x.prefix(100);
  const Word longer = x.prefix(10000);
  CHECK(std::equal(first.begin(), first.end(), longer.begin()));
  CHECK(trib.alphabet().render(longer) == oracle::fixed_point(testing::kTribonacci, 'a', 10000));
}
