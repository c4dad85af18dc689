#pragma once

// Occurrence sets of factors in a periodic point, return gaps, and a
// horizon-bounded proximality scan between two periodic points.

#include <cstddef>
#include <optional>
#include <vector>

#include "subdyn/word.hpp"

namespace subdyn {

struct OccurrenceSet {
  Word factor;
  std::size_t horizon = 0;
  // Strictly increasing; every p satisfies p + |factor| <= horizon.
  std::vector<std::size_t> positions;

  bool contains(std::size_t position) const;
};

// Positions k with k + |u| <= horizon where the word reads u. Throws
// InputError for an empty factor, horizon < |u| or foreign letters.
OccurrenceSet occurrences(FixedPointStream& stream, WordView factor, std::size_t horizon);
OccurrenceSet occurrences_in(WordView text, std::size_t alphabet_size, WordView factor,
                             std::size_t horizon);

// Largest difference between consecutive positions, counting the gap from 0
// to the first position; nullopt with fewer than two occurrences.
std::optional<std::size_t> max_return_gap(const OccurrenceSet& occ);

struct AgreementWindow {
  std::size_t position;
  std::size_t length;
  // The run reaches the horizon and may continue beyond it.
  bool truncated;
};

struct HorizonLongest {
  std::size_t horizon;
  std::size_t longest;
};

enum class ProximalityVerdict { EvidenceFor, NoneFound };

struct ProximalityEvidence {
  std::size_t horizon = 0;
  std::size_t min_window = 0;
  // Maximal runs of agreement x_n..x_{n+N-1} = y_n..y_{n+N-1} with N >= min_window.
  std::vector<AgreementWindow> windows;
  // Longest agreement run below horizon / 2^j, for j = 0, 1, ... while the
  // halved horizon is still >= min_window; ascending by horizon.
  std::vector<HorizonLongest> per_horizon;
  ProximalityVerdict verdict = ProximalityVerdict::NoneFound;
};

// EvidenceFor when some window of length >= min_window exists and the
// longest run grows from horizon/2 to horizon. Never a proof of proximality.
ProximalityEvidence proximality_scan(FixedPointStream& x, FixedPointStream& y,
                                     std::size_t min_window, std::size_t horizon);

}  // namespace subdyn
