#include <cmath>
#include <random>
#include <sstream>

#include "doctest.h"
#include "helpers.hpp"
#include "subdyn/errors.hpp"
#include "subdyn/strand.hpp"

using namespace subdyn;
using testing::make_sub;

namespace {

InvariantSplitting splitting(const Substitution& sub) {
  return invariant_splitting(classify(sub), abelianization_matrix(sub));
}

}  // namespace

TEST_CASE("splitting identities") {
  for (const auto& rules : {testing::kFibonacci, testing::kTribonacci, testing::kPair}) {
    const auto sub = make_sub(rules);
    const auto s = splitting(sub);
    const std::size_t n = s.dim;
    CHECK(s.idempotence_residual < 1e-12);
    CHECK(s.invariance_residual < 1e-12);
    double lw = 0;
    for (std::size_t i = 0; i < n; ++i) lw += s.left[i] * s.unstable[i];
    CHECK(std::abs(lw - 1) < 1e-12);
    // Stable basis is orthonormal and orthogonal to the left eigenvector.
    for (std::size_t a = 0; a + 1 < n; ++a) {
      double ln = 0;
      for (std::size_t i = 0; i < n; ++i) ln += s.left[i] * s.stable_basis[a][i];
      CHECK(std::abs(ln) < 1e-12);
      for (std::size_t b = 0; b + 1 < n; ++b) {
        double d = 0;
        for (std::size_t i = 0; i < n; ++i) d += s.stable_basis[a][i] * s.stable_basis[b][i];
        CHECK(std::abs(d - (a == b ? 1.0 : 0.0)) < 1e-12);
      }
    }
    // |pr^s v| from the projector equals the norm of the stable coordinates.
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = static_cast<double>(i * 3 + 1);
    double direct = 0;
    for (std::size_t i = 0; i < n; ++i) {
      double row = 0;
      for (std::size_t j = 0; j < n; ++j) row += s.pr_s[i * n + j] * v[j];
      direct += row * row;
    }
    CHECK(std::abs(std::sqrt(direct) - s.stable_norm(v)) < 1e-12);
  }
}

TEST_CASE("unsupported classifications") {
  for (const auto& rules : {testing::kThueMorse, testing::kProximal, testing::kUnitRoot}) {
    const auto sub = make_sub(rules);
    CHECK_THROWS_AS(splitting(sub), UnsupportedInput);
  }
}

TEST_CASE("substitute strand examples") {
  const auto fib = make_sub(testing::kFibonacci);
  const auto once = substitute_strand(fib, build_strand(Word{0}, 2));
  REQUIRE(once.segments.size() == 2);
  CHECK(once.segments[0] == Segment{AbelianVector({0, 0}), 0});
  CHECK(once.segments[1] == Segment{AbelianVector({1, 0}), 1});
  const auto b = substitute_strand(fib, build_strand(Word{1}, AbelianVector({1, 0})));
  REQUIRE(b.segments.size() == 1);
  CHECK(b.segments[0] == Segment{AbelianVector({1, 1}), 0});
  CHECK(substitute_strand(fib, Strand{2, {}}).segments.empty());
}

TEST_CASE("pattern commutation and vertex law") {
  std::mt19937_64 rng(51);
  for (int trial = 0; trial < 200; ++trial) {
    const auto rules = oracle::random_rules(rng, 2 + trial % 3, 4);
    const auto sub = make_sub(rules);
    const auto w = sub.alphabet().parse(oracle::random_words(rng, rules.alphabet, 1, 50)[0]);
    AbelianVector origin(sub.size());
    for (std::size_t i = 0; i < sub.size(); ++i) origin[i] = static_cast<std::int64_t>(rng() % 7) - 3;
    const auto s = build_strand(w, origin);
    CHECK(s.follows(w));
    const auto image = substitute_strand(sub, s);
    const auto tw = sub.apply(w);
    CHECK(image.follows(tw));
    CHECK(image.segments == build_strand(tw, abelianization_matrix(sub) * origin).segments);
  }
}

TEST_CASE("stability scans") {
  const auto fib = make_sub(testing::kFibonacci);
  const auto sf = splitting(fib);
  const auto scan = stability_scan(fib, build_strand(Word{0}, 2), 10, sf);
  CHECK(scan.bounded);
  for (double e : scan.envelope) CHECK(e < 2);
  CHECK(scan.conjugation_error < 1e-6);

  const auto trib = make_sub(testing::kTribonacci);
  const auto st = splitting(trib);
  const auto scan3 = stability_scan(trib, build_strand(Word{0}, 3), 10, st);
  CHECK(scan3.bounded);
  CHECK(scan3.conjugation_error < 1e-6);
  for (double e : scan3.envelope) CHECK(e <= scan3.cylinder_radius);

  const auto empty = stability_scan(fib, Strand{2, {}}, 1, sf);
  REQUIRE(empty.envelope.size() == 1);
  CHECK(empty.envelope[0] == 0);
  CHECK_THROWS_AS(stability_scan(fib, Strand{2, {}}, 0, sf), InputError);
}

TEST_CASE("envelope of a fixed-point strand is nondecreasing") {
  // Sigma^k of the strand "a" is the prefix strand of the fixed point, so the
  // vertex sets are nested and the maxima can only grow.
  for (const auto& rules : {testing::kFibonacci, testing::kTribonacci}) {
    const auto sub = make_sub(rules);
    const auto scan = stability_scan(sub, build_strand(Word{0}, sub.size()), 12, splitting(sub));
    for (std::size_t k = 1; k < scan.envelope.size(); ++k) CHECK(scan.envelope[k] >= scan.envelope[k - 1]);
    CHECK(scan.envelope.back() <= scan.cylinder_radius);
  }
}

TEST_CASE("cylinder radius bounds long runs") {
  std::mt19937_64 rng(52);
  const auto trib = make_sub(testing::kTribonacci);
  const auto st = splitting(trib);
  for (int trial = 0; trial < 10; ++trial) {
    const auto w = trib.alphabet().parse(oracle::random_words(rng, "abc", 1, 20, 1)[0]);
    const auto scan = stability_scan(trib, build_strand(w, 3), 12, st);
    for (double e : scan.envelope) CHECK(e <= scan.cylinder_radius * (1 + 1e-12));
  }
}

TEST_CASE("stable norm of delta stays bounded") {
  const auto pair = make_sub(testing::kPair);
  const auto s = splitting(pair);
  FixedPointStream x(pair, 0), y(pair, 1);
  const double small = max_stable_delta_norm(x, y, 10000, s);
  const double large = max_stable_delta_norm(x, y, 100000, s);
  CHECK(large == small);
  CHECK(large < 2);
}

TEST_CASE("exports are deterministic") {
  const auto trib = make_sub(testing::kTribonacci);
  const auto st = splitting(trib);
  std::vector<Strand> its{build_strand(Word{0}, 3)};
  for (int k = 0; k < 5; ++k) its.push_back(substitute_strand(trib, its.back()));
  std::ostringstream csv1, csv2, svg1, svg2;
  write_strand_csv(csv1, trib.alphabet(), its, st);
  write_strand_csv(csv2, trib.alphabet(), its, st);
  write_stable_svg(svg1, its.back(), st);
  write_stable_svg(svg2, its.back(), st);
  CHECK(csv1.str() == csv2.str());
  CHECK(svg1.str() == svg2.str());
  std::size_t rows = 0;
  for (const auto& s : its) rows += s.segments.size();
  const std::string text = csv1.str();
  CHECK(static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n')) == rows + 1);
  CHECK(text.rfind("iteration,segment,v0,v1,v2,type,pr_u,s0,s1\n", 0) == 0);
  CHECK(svg1.str().find("viewBox=\"0 0 512 512\"") != std::string::npos);
}
