#pragma once

// Finite-sums (IP) families inside occurrence sets: the path construction
// from a strong-coincidence witness, exhaustive verification of subset sums
// and a backtracking search for FS families.

#include <cstddef>
#include <optional>
#include <vector>

#include "subdyn/bigint.hpp"
#include "subdyn/coincidence.hpp"
#include "subdyn/numeration.hpp"
#include "subdyn/points.hpp"

namespace subdyn {

// Where a path-built family came from. With sigma = tau^power:
//   s c is a prefix of sigma(a), t c is a prefix of sigma(b), and r b is a
//   prefix of sigma(c) (first occurrence of b).
// Generator i is the value of the path s, r, e, ..., e (schedule[i] empty
// labels) at a in the prefix automaton of sigma; the companion path at b
// starts with t instead of s and has the same value.
struct FsProvenance {
  unsigned power;
  Letter source;   // a = first letter of x
  Letter target;   // b = first letter of y; generators are occurrences of b in x
  Letter via;      // c
  Word s, t, r;
  std::vector<std::size_t> schedule;
  std::vector<PathRepresentation> paths;            // p_i, at a
  std::vector<PathRepresentation> companion_paths;  // q_i, at b
};

struct FsFamily {
  std::vector<BigInt> generators;  // strictly increasing
  std::optional<FsProvenance> provenance;  // nullopt: found by search
};

struct FsBuildOptions {
  unsigned max_power = 8;
  // Number of trailing empty labels per generator; empty means 2i. Must grow
  // by at least 2 per step so that the paths of distinct generators can be
  // concatenated level by level.
  std::vector<std::size_t> schedule;
};

// Throws InputError for an invalid witness (k = 0, or not realizable as
// prefixes of tau^m-images for any m <= max_power).
FsFamily build_fs_family(const Substitution& sub, const CoincidenceWitness& witness, std::size_t count,
                         const FsBuildOptions& options = {});

// |sigma^(N+1)(w)| + |sigma^N(r)| style lengths, via exact abelian powers.
// Exposed for the companion-path check: value of s,r,e^N equals that of t,r,e^N.
BigInt fs_generator_value(const Substitution& sigma, WordView first, WordView r, std::size_t trailing);

enum class FsVerdict { Pass, Fail, Incomplete };
std::string to_string(FsVerdict verdict);

struct SubsetFailure {
  std::vector<std::size_t> subset;  // generator indices
  BigInt sum;
};

struct FsVerification {
  std::size_t horizon = 0;
  std::size_t max_subset_size = 0;
  std::size_t checked = 0;
  std::size_t unchecked = 0;  // sums at or beyond the horizon
  std::vector<SubsetFailure> failures;
  std::vector<std::vector<std::size_t>> unchecked_subsets;  // first few only
  FsVerdict verdict = FsVerdict::Pass;
};

// Tests every nonempty subset of at most max_subset_size generators. Pass
// requires no failure and no unchecked subset.
FsVerification verify_finite_sums(const FsFamily& family, const OccurrenceSet& occ,
                                  std::size_t max_subset_size);

// Backtracking search for positive generators g_1 < ... < g_depth whose
// 2^depth - 1 subset sums are pairwise distinct and all lie in occ (and below
// its horizon). Returns the lexicographically least such family.
std::optional<FsFamily> search_ip_witness(const OccurrenceSet& occ, std::size_t depth);

}  // namespace subdyn
