#include "subdyn/ipcentral.hpp"

#include <algorithm>
#include <functional>

#include "subdyn/errors.hpp"

namespace subdyn {

namespace {

bool has_prefix(const Word& word, WordView prefix) {
  return word.size() >= prefix.size() && std::equal(prefix.begin(), prefix.end(), word.begin());
}

std::vector<std::size_t> resolve_schedule(const FsBuildOptions& options, std::size_t count) {
  std::vector<std::size_t> schedule = options.schedule;
  if (schedule.empty()) {
    for (std::size_t i = 0; i < count; ++i) schedule.push_back(2 * i);
  }
  if (schedule.size() < count) throw InputError("schedule has fewer entries than requested generators");
  schedule.resize(count);
  for (std::size_t i = 1; i < schedule.size(); ++i) {
    if (schedule[i] < schedule[i - 1] + 2) {
      throw InputError("schedule must increase by at least 2 per generator");
    }
  }
  return schedule;
}

}  // namespace

BigInt fs_generator_value(const Substitution& sigma, WordView first, WordView r, std::size_t trailing) {
  const PrefixGraph graph(sigma);
  const auto upper = graph.letter_lengths(trailing + 1);
  const auto lower = graph.letter_lengths(trailing);
  BigInt total = 0;
  for (Letter l : first) total += upper[l];
  for (Letter l : r) total += lower[l];
  return total;
}

FsFamily build_fs_family(const Substitution& sub, const CoincidenceWitness& witness, std::size_t count,
                         const FsBuildOptions& options) {
  const std::size_t k = witness.index;
  if (k == 0 || witness.s.size() != k || witness.t.size() != k) {
    throw InputError("witness prefixes must be nonempty and of length k");
  }
  if (!abelian_equivalent(witness.s, witness.t, sub.size())) {
    throw InputError("witness prefixes are not abelian equivalent");
  }
  FsFamily family;
  if (count == 0) return family;
  const auto schedule = resolve_schedule(options, count);

  const Letter a = witness.s.front();
  const Letter b = witness.t.front();
  const Letter c = witness.letter;

  for (unsigned m = 1; m <= options.max_power; ++m) {
    const Substitution sigma = sub.power(m);
    const Word& ia = sigma.image(a);
    const Word& ib = sigma.image(b);
    const Word& ic = sigma.image(c);
    if (ia.front() != a || ib.front() != b) continue;
    if (ia.size() <= k || ib.size() <= k) continue;
    if (!has_prefix(ia, witness.s) || ia[k] != c) continue;
    if (!has_prefix(ib, witness.t) || ib[k] != c) continue;
    const auto hit = std::find(ic.begin(), ic.end(), b);
    if (hit == ic.end()) continue;

    FsProvenance prov;
    prov.power = m;
    prov.source = a;
    prov.target = b;
    prov.via = c;
    prov.s = witness.s;
    prov.t = witness.t;
    prov.r.assign(ic.begin(), hit);
    prov.schedule = schedule;

    const PrefixGraph graph(sigma);
    for (std::size_t i = 0; i < count; ++i) {
      PathRepresentation p{a, {prov.s, prov.r}};
      PathRepresentation q{b, {prov.t, prov.r}};
      p.labels.resize(2 + schedule[i]);
      q.labels.resize(2 + schedule[i]);
      const auto decoded = decode_path(graph, p);
      if (decoded.terminal != b) throw std::logic_error("fs path does not end at the target letter");
      family.generators.push_back(decoded.value);
      prov.paths.push_back(std::move(p));
      prov.companion_paths.push_back(std::move(q));
    }
    family.provenance = std::move(prov);
    return family;
  }
  throw InputError("no power tau^m with m <= " + std::to_string(options.max_power) +
                   " realizes the witness prefixes (is the witness valid?)");
}

std::string to_string(FsVerdict verdict) {
  switch (verdict) {
    case FsVerdict::Pass: return "pass";
    case FsVerdict::Fail: return "fail";
    case FsVerdict::Incomplete: return "incomplete";
  }
  return "?";
}

FsVerification verify_finite_sums(const FsFamily& family, const OccurrenceSet& occ,
                                  std::size_t max_subset_size) {
  constexpr std::size_t kMaxSubsets = 50'000'000;
  constexpr std::size_t kKeepUnchecked = 16;
  const std::size_t m = family.generators.size();
  const std::size_t limit = std::min(max_subset_size, m);
  {
    // Count subsets up front so that huge requests fail fast.
    long double total = 0, binom = 1;
    for (std::size_t j = 1; j <= limit; ++j) {
      binom = binom * static_cast<long double>(m - j + 1) / static_cast<long double>(j);
      total += binom;
    }
    if (total > kMaxSubsets) throw InputError("too many subsets to verify; lower the subset-size bound");
  }
  FsVerification report;
  report.horizon = occ.horizon;
  report.max_subset_size = max_subset_size;
  const BigInt last_start = BigInt(occ.horizon) - BigInt(occ.factor.size());

  std::vector<std::size_t> chosen;
  std::function<void(std::size_t, const BigInt&)> visit = [&](std::size_t next, const BigInt& sum) {
    if (!chosen.empty()) {
      if (sum > last_start) {
        ++report.unchecked;
        if (report.unchecked_subsets.size() < kKeepUnchecked) report.unchecked_subsets.push_back(chosen);
      } else {
        ++report.checked;
        if (!occ.contains(static_cast<std::size_t>(sum))) report.failures.push_back({chosen, sum});
      }
    }
    if (chosen.size() == limit) return;
    for (std::size_t i = next; i < m; ++i) {
      chosen.push_back(i);
      visit(i + 1, sum + family.generators[i]);
      chosen.pop_back();
    }
  };
  visit(0, 0);

  if (!report.failures.empty()) {
    report.verdict = FsVerdict::Fail;
  } else if (report.unchecked > 0) {
    report.verdict = FsVerdict::Incomplete;
  } else {
    report.verdict = FsVerdict::Pass;
  }
  return report;
}

std::optional<FsFamily> search_ip_witness(const OccurrenceSet& occ, std::size_t depth) {
  if (depth == 0) throw InputError("depth must be at least 1");
  const std::size_t horizon = occ.horizon;
  std::vector<std::uint8_t> member(horizon, 0), used(horizon, 0);
  for (std::size_t p : occ.positions) member[p] = 1;

  std::vector<std::size_t> gens;
  std::vector<std::size_t> sums;  // all nonempty subset sums of gens

  std::function<bool()> extend = [&]() -> bool {
    if (gens.size() == depth) return true;
    const std::size_t after = gens.empty() ? 0 : gens.back();
    auto start = std::upper_bound(occ.positions.begin(), occ.positions.end(), after);
    for (auto it = start; it != occ.positions.end(); ++it) {
      const std::size_t g = *it;
      if (g == 0 || used[g]) continue;
      bool ok = true;
      for (std::size_t s : sums) {
        const std::size_t v = s + g;
        if (v >= horizon || !member[v] || used[v]) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      const std::size_t old = sums.size();
      sums.push_back(g);
      for (std::size_t i = 0; i < old; ++i) sums.push_back(sums[i] + g);
      for (std::size_t i = old; i < sums.size(); ++i) used[sums[i]] = 1;
      gens.push_back(g);
      if (extend()) return true;
      gens.pop_back();
      for (std::size_t i = old; i < sums.size(); ++i) used[sums[i]] = 0;
      sums.resize(old);
    }
    return false;
  };
  if (!extend()) return std::nullopt;
  FsFamily family;
  for (std::size_t g : gens) family.generators.emplace_back(g);
  return family;
}

}  // namespace subdyn
