#include "subdyn/points.hpp"

#include <algorithm>

#include "subdyn/errors.hpp"
#include "subdyn/kernels/kernels.hpp"

namespace subdyn {

bool OccurrenceSet::contains(std::size_t position) const {
  return std::binary_search(positions.begin(), positions.end(), position);
}

OccurrenceSet occurrences_in(WordView text, std::size_t alphabet_size, WordView factor,
                             std::size_t horizon) {
  if (factor.empty()) throw InputError("factor must be nonempty");
  if (horizon < factor.size()) throw InputError("horizon must be at least the factor length");
  if (text.size() < horizon) throw InputError("text is shorter than the horizon");
  for (Letter l : factor) {
    if (l >= alphabet_size) throw InputError("factor contains letters outside the alphabet");
  }
  OccurrenceSet occ;
  occ.factor.assign(factor.begin(), factor.end());
  occ.horizon = horizon;

  // Candidate starts come from a vectorized search for the first letter;
  // the rest of the factor is compared directly.
  const auto& k = kernels::active_kernels();
  const std::size_t last_start = horizon - factor.size();
  const std::size_t limit = last_start + 1;
  std::size_t pos = k.find_byte(text.data(), limit, factor[0], 0);
  while (pos < limit) {
    if (std::equal(factor.begin() + 1, factor.end(), text.begin() + static_cast<std::ptrdiff_t>(pos) + 1)) {
      occ.positions.push_back(pos);
    }
    pos = k.find_byte(text.data(), limit, factor[0], pos + 1);
  }
  return occ;
}

OccurrenceSet occurrences(FixedPointStream& stream, WordView factor, std::size_t horizon) {
  if (horizon < factor.size()) throw InputError("horizon must be at least the factor length");
  return occurrences_in(stream.expand(horizon), stream.alphabet_size(), factor, horizon);
}

std::optional<std::size_t> max_return_gap(const OccurrenceSet& occ) {
  if (occ.positions.size() < 2) return std::nullopt;
  std::size_t gap = occ.positions.front();
  for (std::size_t i = 1; i < occ.positions.size(); ++i) {
    gap = std::max(gap, occ.positions[i] - occ.positions[i - 1]);
  }
  return gap;
}

namespace {

std::size_t longest_run_below(const std::vector<AgreementWindow>& runs, std::size_t horizon) {
  std::size_t best = 0;
  for (const auto& r : runs) {
    if (r.position >= horizon) break;
    best = std::max(best, std::min(r.position + r.length, horizon) - r.position);
  }
  return best;
}

}  // namespace

ProximalityEvidence proximality_scan(FixedPointStream& x, FixedPointStream& y,
                                     std::size_t min_window, std::size_t horizon) {
  if (x.substitution().alphabet() != y.substitution().alphabet()) {
    throw InputError("proximality scan needs points over the same alphabet");
  }
  if (min_window == 0) throw InputError("min_window must be positive");
  if (horizon < min_window) throw InputError("horizon must be at least min_window");

  const Word xs = x.prefix(horizon);
  const Word ys = y.prefix(horizon);
  const auto& k = kernels::active_kernels();

  // All maximal agreement runs, alternating between the two kernels.
  std::vector<AgreementWindow> runs;
  std::size_t pos = k.first_equal(xs.data(), ys.data(), horizon, 0);
  while (pos < horizon) {
    const std::size_t end = k.first_diff(xs.data(), ys.data(), horizon, pos);
    runs.push_back({pos, end - pos, end == horizon});
    if (end == horizon) break;
    pos = k.first_equal(xs.data(), ys.data(), horizon, end);
  }

  ProximalityEvidence ev;
  ev.horizon = horizon;
  ev.min_window = min_window;
  for (const auto& r : runs) {
    if (r.length >= min_window) ev.windows.push_back(r);
  }
  for (std::size_t h = horizon; h >= min_window; h /= 2) {
    ev.per_horizon.push_back({h, longest_run_below(runs, h)});
    if (h == 1) break;
  }
  std::reverse(ev.per_horizon.begin(), ev.per_horizon.end());

  const std::size_t full = longest_run_below(runs, horizon);
  const std::size_t half = longest_run_below(runs, horizon / 2);
  ev.verdict = (!ev.windows.empty() && full > half) ? ProximalityVerdict::EvidenceFor
                                                    : ProximalityVerdict::NoneFound;
  return ev;
}

}  // namespace subdyn
