#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "subdyn/errors.hpp"
#include "subdyn/points.hpp"

using namespace subdyn;
using testing::make_sub;

namespace {

std::vector<std::size_t> occ(const oracle::Rules& rules, char seed, const std::string& u, std::size_t horizon) {
  const auto sub = make_sub(rules);
  FixedPointStream x(sub, sub.alphabet().letter(seed));
  return occurrences(x, sub.alphabet().parse(u), horizon).positions;
}

}  // namespace

TEST_CASE("fibonacci occurrence examples") {
  CHECK(occ(testing::kFibonacci, 'a', "a", 12) == std::vector<std::size_t>{0, 2, 3, 5, 7, 8, 10, 11});
  CHECK(occ(testing::kFibonacci, 'a', "ab", 13) == std::vector<std::size_t>{0, 3, 5, 8, 11});
  CHECK(occ(testing::kFibonacci, 'a', "bb", 10000).empty());
}

TEST_CASE("occurrence errors") {
  const auto fib = make_sub(testing::kFibonacci);
  FixedPointStream x(fib, 0);
  CHECK_THROWS_AS(occurrences(x, Word{}, 10), InputError);
  CHECK_THROWS_AS(occurrences(x, Word{0, 1, 0}, 2), InputError);
  CHECK_THROWS_AS(occurrences(x, Word{2}, 10), InputError);
}

TEST_CASE("occurrences agree with string search") {
  std::mt19937_64 rng(21);
  for (const auto& rules : {testing::kFibonacci, testing::kTribonacci, testing::kThueMorse, testing::kPair}) {
    const std::string text = oracle::fixed_point(rules, 'a', 20000);
    for (const auto& u : oracle::random_words(rng, rules.alphabet, 30, 8, 1)) {
      for (std::size_t h : {1u, 17u, 999u, 20000u}) {
        if (h < u.size()) continue;
        CHECK(occ(rules, 'a', u, h) == oracle::find_all(text, u, h));
      }
    }
  }
}

TEST_CASE("prefix containment") {
  std::mt19937_64 rng(22);
  const std::string text = oracle::fixed_point(testing::kTribonacci, 'a', 5000);
  for (int trial = 0; trial < 50; ++trial) {
    std::uniform_int_distribution<std::size_t> pos(0, 4000), len(2, 12);
    const std::string u = text.substr(pos(rng), len(rng));
    const auto long_occ = occ(testing::kTribonacci, 'a', u, 5000);
    const auto short_occ = occ(testing::kTribonacci, 'a', u.substr(0, u.size() - 1), 5000);
    for (auto p : long_occ) CHECK(std::binary_search(short_occ.begin(), short_occ.end(), p));
  }
}

TEST_CASE("return gaps") {
  const auto fib = make_sub(testing::kFibonacci);
  FixedPointStream x(fib, 0);
  CHECK(max_return_gap(occurrences(x, Word{0}, 12)) == 2u);
  CHECK(max_return_gap(occurrences(x, Word{1}, 13)) == 3u);
  OccurrenceSet single{Word{0}, 10, {4}};
  CHECK_FALSE(max_return_gap(single).has_value());
  // Gap from 0 to the first position counts.
  OccurrenceSet late{Word{0}, 20, {9, 10}};
  CHECK(max_return_gap(late) == 9u);
}

TEST_CASE("return gaps stabilize for primitive fixed points") {
  for (const auto& rules : {testing::kFibonacci, testing::kTribonacci}) {
    const auto sub = make_sub(rules);
    FixedPointStream x(sub, 0);
    const std::string text = oracle::fixed_point(rules, 'a', 1000);
    for (std::size_t len = 1; len <= 6; ++len) {
      const Word u = sub.alphabet().parse(text.substr(100, len));
      const auto g3 = max_return_gap(occurrences(x, u, 1000));
      const auto g4 = max_return_gap(occurrences(x, u, 10000));
      const auto g5 = max_return_gap(occurrences(x, u, 100000));
      CHECK(g3 == g4);
      CHECK(g4 == g5);
    }
  }
}

TEST_CASE("proximality scan") {
  const auto prox = make_sub(testing::kProximal);
  FixedPointStream x(prox, 0), y(prox, 1);
  const auto ev = proximality_scan(x, y, 4, 16);
  bool found = false;
  for (const auto& w : ev.windows) found = found || (w.position <= 8 && w.position + w.length >= 12);
  CHECK(found);
  const Word xs = x.prefix(12), ys = y.prefix(12);
  CHECK(prox.alphabet().render(Word(xs.begin() + 8, xs.end())) == "aaab");
  CHECK(prox.alphabet().render(Word(ys.begin() + 8, ys.end())) == "aaab");

  const auto tm = make_sub(testing::kThueMorse);
  FixedPointStream t0(tm, 0), t1(tm, 1);
  const auto none = proximality_scan(t0, t1, 1, 100000);
  CHECK(none.windows.empty());
  CHECK(none.verdict == ProximalityVerdict::NoneFound);

  FixedPointStream a(prox, 0), b(prox, 0);
  const auto self = proximality_scan(a, b, 1, 5000);
  REQUIRE(self.windows.size() == 1);
  CHECK(self.windows[0].position == 0);
  CHECK(self.windows[0].length == 5000);
  CHECK(self.windows[0].truncated);
}

TEST_CASE("proximality windows match a direct comparison") {
  const auto prox = make_sub(testing::kProximal);
  FixedPointStream x(prox, 0), y(prox, 1);
  const std::size_t h = 20000;
  const auto ev = proximality_scan(x, y, 3, h);
  const std::string xs = oracle::fixed_point(testing::kProximal, 'a', h);
  const std::string ys = oracle::fixed_point(testing::kProximal, 'b', h);
  std::vector<std::pair<std::size_t, std::size_t>> expected;
  for (std::size_t i = 0; i < h;) {
    if (xs[i] != ys[i]) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < h && xs[j] == ys[j]) ++j;
    if (j - i >= 3) expected.push_back({i, j - i});
    i = j;
  }
  REQUIRE(ev.windows.size() == expected.size());
  for (std::size_t k = 0; k < expected.size(); ++k) {
    CHECK(ev.windows[k].position == expected[k].first);
    CHECK(ev.windows[k].length == expected[k].second);
  }
}
