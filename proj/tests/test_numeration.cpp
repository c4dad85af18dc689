#include <algorithm>
#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "subdyn/errors.hpp"
#include "subdyn/numeration.hpp"

using namespace subdyn;
using testing::make_sub;

namespace {

// The path order straight from its definition, on oracle paths.
bool oracle_less(const oracle::Path& s, const oracle::Path& t) {
  if (s.labels.size() != t.labels.size()) return s.labels.size() < t.labels.size();
  for (std::size_t i = 0; i < s.labels.size(); ++i) {
    if (s.labels[i] != t.labels[i]) return s.labels[i].size() < t.labels[i].size();
  }
  return false;
}

std::vector<std::string> path_strings(const oracle::Path& p) { return p.labels; }

std::vector<std::string> path_strings(const Alphabet& alphabet, const PathRepresentation& p) {
  std::vector<std::string> out;
  for (const auto& l : p.labels) out.push_back(alphabet.render(l));
  return out;
}

}  // namespace

TEST_CASE("prefix graph") {
  const auto sub = make_sub(testing::kUnitRoot);
  const PrefixGraph g(sub);
  CHECK(g.edges().size() == 8);
  for (Letter v = 0; v < 2; ++v) {
    const auto& out = g.out_edges(v);
    for (std::size_t i = 0; i < out.size(); ++i) CHECK(out[i].label.size() == i);
  }
  CHECK(sub.alphabet().render(g.out_edges(1)[3].label) == "bba");
  CHECK(g.out_edges(1)[3].target == 0);
}

TEST_CASE("fibonacci listing") {
  const auto fib = make_sub(testing::kFibonacci);
  const PrefixGraph g(fib);
  const std::vector<std::string> expected{"a:",        "a: a",         "a: a.e",
                                          "a: a.e.e",  "a: a.e.a",     "a: a.e.e.e",
                                          "a: a.e.e.a", "a: a.e.a.e",  "a: a.e.e.e.e"};
  const auto paths = enumerate_paths(g, 0, 9);
  for (std::size_t i = 0; i < 9; ++i) CHECK(format_path(fib.alphabet(), paths[i]) == expected[i]);
  CHECK(format_path(fib.alphabet(), encode_integer(g, 0, 7)) == "a: a.e.a.e");
}

TEST_CASE("two-seed automaton represents 5 from both seeds") {
  const auto sub = make_sub(testing::kUnitRoot);
  const PrefixGraph g(sub);
  const auto from_a = encode_integer(g, 0, 5);
  const auto from_b = encode_integer(g, 1, 5);
  CHECK(format_path(sub.alphabet(), from_a) == "a: a.aa");
  CHECK(format_path(sub.alphabet(), from_b) == "b: b.e");
  DecodeOptions opts;
  opts.materialize = true;
  CHECK(sub.alphabet().render(*decode_path(g, from_a, opts).realized) == "aabaa");
  CHECK(sub.alphabet().render(*decode_path(g, from_b, opts).realized) == "bbaab");
}

TEST_CASE("order and values match brute-force path enumeration") {
  for (const auto& rules : {testing::kFibonacci, testing::kTribonacci, testing::kUnitRoot, testing::kPair}) {
    const auto sub = make_sub(rules);
    const PrefixGraph g(sub);
    for (Letter start : {Letter{0}, Letter{1}}) {
      if (!(sub.image(start).size() > 1 && sub.image(start)[0] == start)) continue;
      auto all = oracle::all_paths(rules, rules.alphabet[start], 6);
      std::sort(all.begin(), all.end(), [](const auto& x, const auto& y) { return oracle_less(x.first, y.first); });
      // Values of the sorted paths are 0, 1, 2, ... (bijection and order preservation).
      for (std::size_t i = 0; i < all.size(); ++i) {
        REQUIRE(all[i].second == i);
        const auto p = encode_integer(g, start, i);
        CHECK(path_strings(sub.alphabet(), p) == path_strings(all[i].first));
        if (i > 0) CHECK(path_less(encode_integer(g, start, i - 1), p));
      }
    }
  }
}

TEST_CASE("round trip and prefix law") {
  std::mt19937_64 rng(41);
  for (const auto& rules : {testing::kFibonacci, testing::kTribonacci, testing::kUnitRoot}) {
    const auto sub = make_sub(rules);
    const PrefixGraph g(sub);
    for (Letter start : {Letter{0}, Letter{1}}) {
      if (!(sub.image(start).size() > 1 && sub.image(start)[0] == start)) continue;
      const std::string x = oracle::fixed_point(rules, rules.alphabet[start], 2001);
      DecodeOptions opts;
      opts.materialize = true;
      for (std::size_t l = 0; l <= 2000; ++l) {
        const auto p = encode_integer(g, start, l);
        const auto d = decode_path(g, p, opts);
        REQUIRE(d.value == l);
        CHECK(sub.alphabet().render(*d.realized) == x.substr(0, l));
        CHECK(d.terminal == sub.alphabet().letter(x[l]));
        CHECK(parse_path(sub.alphabet(), format_path(sub.alphabet(), p)) == p);
      }
      // Very large values stay exact.
      const BigInt big = BigInt(1) << 200;
      CHECK(decode_path(g, encode_integer(g, start, big)).value == big);
    }
  }
}

TEST_CASE("zeckendorf and base-k degeneration") {
  const auto fib = make_sub(testing::kFibonacci);
  const PrefixGraph g(fib);
  for (std::size_t l = 1; l <= 1000; ++l) {
    const auto p = encode_integer(g, 0, l);
    for (std::size_t i = 0; i + 1 < p.labels.size(); ++i) CHECK_FALSE((p.labels[i].size() == 1 && p.labels[i + 1].size() == 1));
  }
  const auto two = testing::sub("a -> ab\nb -> ba");
  const PrefixGraph g2(two);
  for (std::size_t l = 1; l <= 1000; ++l) {
    std::string bits;
    for (const auto& label : encode_integer(g2, 0, l).labels) bits += static_cast<char>('0' + label.size());
    std::string expected;
    for (std::size_t v = l; v; v >>= 1) expected.insert(expected.begin(), static_cast<char>('0' + (v & 1)));
    CHECK(bits == expected);
  }
}

TEST_CASE("decode errors") {
  const auto fib = make_sub(testing::kFibonacci);
  const PrefixGraph g(fib);
  CHECK_THROWS_AS(decode_path(g, PathRepresentation{0, {Word{}, Word{0}}}), InputError);
  CHECK_THROWS_AS(decode_path(g, PathRepresentation{0, {Word{1}}}), InputError);
  CHECK_THROWS_AS(encode_integer(g, 1, 3), InputError);
  CHECK_THROWS_AS(parse_path(fib.alphabet(), "a a.e"), InputError);
  DecodeOptions opts;
  opts.materialize = true;
  opts.materialize_cap = 10;
  CHECK_THROWS_AS(decode_path(g, encode_integer(g, 0, 100), opts), InputError);
}

TEST_CASE("synchronizing values are positions where the fixed points agree") {
  const auto sub = make_sub(testing::kUnitRoot);
  const PrefixGraph g(sub);
  const auto scan = synchronizing_scan(g, 0, 1, 0, 3000);
  const std::string x = oracle::fixed_point(testing::kUnitRoot, 'a', 3001);
  const std::string y = oracle::fixed_point(testing::kUnitRoot, 'b', 3001);
  std::vector<std::size_t> expected;
  for (std::size_t l = 0; l <= 3000; ++l) {
    if (x[l] == y[l]) expected.push_back(l);
  }
  std::vector<std::size_t> got;
  for (const auto& e : scan.synchronizing) got.push_back(e.value);
  CHECK(got == expected);
}

TEST_CASE("weight table") {
  const auto fib = make_sub(testing::kFibonacci);
  const auto rows = weight_table(PrefixGraph(fib), 5);
  for (const auto& r : rows) {
    CHECK(r.weight == oracle::apply(testing::kFibonacci, fib.alphabet().render(r.label), static_cast<int>(r.level)).size());
  }
}
