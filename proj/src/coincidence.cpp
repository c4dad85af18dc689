#include "subdyn/coincidence.hpp"

#include <algorithm>
#include <set>

#include "subdyn/errors.hpp"

namespace subdyn {

namespace {

void require_compatible(const FixedPointStream& x, const FixedPointStream& y) {
  if (x.substitution().alphabet() != y.substitution().alphabet()) {
    throw InputError("points must be over the same alphabet");
  }
}

// Walks Delta_0, Delta_1, ... calling visit(k, delta, x_k, y_k) until it
// returns false or k reaches the horizon.
template <class Visit>
void walk_deltas(FixedPointStream& x, FixedPointStream& y, std::size_t horizon, Visit&& visit) {
  require_compatible(x, y);
  const std::size_t dim = x.alphabet_size();
  const Word xs = x.prefix(horizon);
  const Word ys = y.prefix(horizon);
  std::vector<std::int64_t> delta(dim, 0);
  for (std::size_t k = 0; k < horizon; ++k) {
    if (!visit(k, std::span<const std::int64_t>(delta), xs[k], ys[k])) return;
    ++delta[xs[k]];
    --delta[ys[k]];
  }
}

bool all_zero(std::span<const std::int64_t> v) {
  return std::all_of(v.begin(), v.end(), [](std::int64_t c) { return c == 0; });
}

}  // namespace

DeltaSequence::DeltaSequence(std::size_t dim, std::size_t horizon)
    : dim_(dim), horizon_(horizon), values_(dim * horizon, 0) {}

AbelianVector DeltaSequence::at(std::size_t k) const {
  auto row = raw(k);
  return AbelianVector(std::vector<std::int64_t>(row.begin(), row.end()));
}

DeltaSequence delta_sequence(FixedPointStream& x, FixedPointStream& y, std::size_t horizon) {
  DeltaSequence seq(x.alphabet_size(), horizon);
  walk_deltas(x, y, horizon, [&](std::size_t k, std::span<const std::int64_t> d, Letter, Letter) {
    std::copy(d.begin(), d.end(), seq.values_.begin() + static_cast<std::ptrdiff_t>(k * seq.dim_));
    return true;
  });
  return seq;
}

DeltaValueSet delta_value_set(FixedPointStream& x, FixedPointStream& y, std::size_t horizon) {
  std::set<std::vector<std::int64_t>> seen;
  std::size_t last_new = 0;
  walk_deltas(x, y, horizon, [&](std::size_t k, std::span<const std::int64_t> d, Letter, Letter) {
    if (seen.emplace(d.begin(), d.end()).second) last_new = k;
    return true;
  });
  DeltaValueSet out{horizon, {}, last_new};
  for (const auto& v : seen) out.values.emplace_back(v);
  return out;
}

CoincidenceVerdict find_strong_coincidence(FixedPointStream& x, FixedPointStream& y,
                                           std::size_t horizon) {
  if (horizon == 0) throw InputError("horizon must be positive");
  std::set<std::vector<std::int64_t>> seen;
  std::size_t last_new = 0;
  std::optional<std::size_t> hit;
  walk_deltas(x, y, horizon, [&](std::size_t k, std::span<const std::int64_t> d, Letter xk, Letter yk) {
    if (xk == yk && all_zero(d)) {
      hit = k;
      return false;
    }
    if (seen.emplace(d.begin(), d.end()).second) last_new = k;
    return true;
  });
  if (hit) {
    const Word xs = x.prefix(*hit + 1);
    const Word ys = y.prefix(*hit + 1);
    return CoincidenceWitness{*hit, xs[*hit], Word(xs.begin(), xs.end() - 1), Word(ys.begin(), ys.end() - 1)};
  }
  NoWitness none{horizon, {}, last_new < horizon / 2};
  for (const auto& v : seen) none.delta_values.emplace_back(v);
  return none;
}

CoincidenceVerdict find_strong_coincidence_deep(FixedPointStream& x, FixedPointStream& y,
                                                std::size_t start_horizon, std::size_t max_horizon) {
  if (start_horizon == 0 || max_horizon < start_horizon) {
    throw InputError("need 0 < start horizon <= max horizon");
  }
  std::size_t h = start_horizon;
  while (true) {
    auto verdict = find_strong_coincidence(x, y, h);
    if (std::holds_alternative<CoincidenceWitness>(verdict) || h >= max_horizon) return verdict;
    h = std::min(max_horizon, 2 * h);
  }
}

bool validate_witness(FixedPointStream& x, FixedPointStream& y, const CoincidenceWitness& w) {
  require_compatible(x, y);
  const std::size_t k = w.index;
  if (w.s.size() != k || w.t.size() != k) return false;
  const Word xs = x.prefix(k + 1);
  const Word ys = y.prefix(k + 1);
  if (!std::equal(w.s.begin(), w.s.end(), xs.begin())) return false;
  if (!std::equal(w.t.begin(), w.t.end(), ys.begin())) return false;
  if (!abelian_equivalent(w.s, w.t, x.alphabet_size())) return false;
  return xs[k] == w.letter && ys[k] == w.letter;
}

}  // namespace subdyn
