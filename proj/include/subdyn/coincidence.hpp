#pragma once

// Strong coincidence between two periodic points x, y: a position k where
// x_k = y_k and the length-k prefixes are abelian equivalent. The search is
// a semi-decision procedure bounded by a horizon.

#include <cstddef>
#include <variant>
#include <vector>

#include "subdyn/word.hpp"

namespace subdyn {

// Delta_k = ab(x_0..x_{k-1}) - ab(y_0..y_{k-1}) for k = 0..horizon-1.
class DeltaSequence {
 public:
  DeltaSequence(std::size_t dim, std::size_t horizon);

  std::size_t dim() const { return dim_; }
  std::size_t horizon() const { return horizon_; }
  AbelianVector at(std::size_t k) const;
  std::span<const std::int64_t> raw(std::size_t k) const {
    return {values_.data() + k * dim_, dim_};
  }

 private:
  friend DeltaSequence delta_sequence(FixedPointStream&, FixedPointStream&, std::size_t);
  std::size_t dim_;
  std::size_t horizon_;
  std::vector<std::int64_t> values_;
};

DeltaSequence delta_sequence(FixedPointStream& x, FixedPointStream& y, std::size_t horizon);

struct CoincidenceWitness {
  std::size_t index;
  Letter letter;
  Word s;  // x_0..x_{k-1}
  Word t;  // y_0..y_{k-1}
  bool operator==(const CoincidenceWitness&) const = default;
};

struct NoWitness {
  std::size_t horizon;
  // Distinct Delta_k for k < horizon, sorted.
  std::vector<AbelianVector> delta_values;
  // No new Delta value appeared in the second half of the scan.
  bool stabilized;
};

using CoincidenceVerdict = std::variant<CoincidenceWitness, NoWitness>;

// Least k < horizon with Delta_k = 0 and x_k = y_k.
CoincidenceVerdict find_strong_coincidence(FixedPointStream& x, FixedPointStream& y,
                                           std::size_t horizon);

// Repeats the scan with horizons start, 2*start, ... up to max_horizon and
// stops at the first witness.
CoincidenceVerdict find_strong_coincidence_deep(FixedPointStream& x, FixedPointStream& y,
                                                std::size_t start_horizon, std::size_t max_horizon);

bool validate_witness(FixedPointStream& x, FixedPointStream& y, const CoincidenceWitness& w);

struct DeltaValueSet {
  std::size_t horizon;
  std::vector<AbelianVector> values;  // sorted
  // Index of the last k that produced a new value.
  std::size_t last_new_index;
  std::size_t cardinality() const { return values.size(); }
};

DeltaValueSet delta_value_set(FixedPointStream& x, FixedPointStream& y, std::size_t horizon);

}  // namespace subdyn
