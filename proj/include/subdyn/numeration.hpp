#pragma once

// Dumont-Thomas numeration: the prefix automaton of a substitution and the
// correspondence between labelled paths and natural numbers.
//
// An edge a -> b labelled u exists for every occurrence of b in tau(a), u
// being the prefix of tau(a) before that occurrence. A path at a is a label
// sequence u_0, ..., u_n along edges from a with u_0 nonempty when n > 0; its
// value is |tau^n(u_0)| + |tau^(n-1)(u_1)| + ... + |u_n|.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "subdyn/bigint.hpp"
#include "subdyn/word.hpp"

namespace subdyn {

struct PrefixEdge {
  Letter source;
  Letter target;
  Word label;
};

class PrefixGraph {
 public:
  explicit PrefixGraph(Substitution sub);

  const Substitution& substitution() const { return sub_; }
  std::size_t vertex_count() const { return sub_.size(); }
  // Out-edges of a vertex, ordered by label length (label of edge i has length i).
  const std::vector<PrefixEdge>& out_edges(Letter vertex) const { return out_.at(vertex); }
  std::vector<PrefixEdge> edges() const;

  // |tau^level(letter)| for every letter, exact.
  std::vector<BigInt> letter_lengths(std::size_t level) const;

 private:
  Substitution sub_;
  std::vector<std::vector<PrefixEdge>> out_;
};

PrefixGraph build_prefix_graph(const Substitution& sub);

struct PathRepresentation {
  Letter start;
  std::vector<Word> labels;  // empty: the 0th path
  bool operator==(const PathRepresentation&) const = default;
};

struct DecodedValue {
  BigInt value;
  Letter terminal;
  std::optional<Word> realized;  // rho(s), only when requested
};

struct DecodeOptions {
  bool materialize = false;
  std::size_t materialize_cap = 1'000'000;
};

// Throws InputError for labels that are not edges at the current vertex, for
// an empty first label on a nonempty path, or when materialization would
// exceed the cap.
DecodedValue decode_path(const PrefixGraph& graph, const PathRepresentation& path,
                         const DecodeOptions& options = {});

// The unique proper path at `start` with value l. Throws InputError unless
// tau(start) begins with start and has length > 1.
PathRepresentation encode_integer(const PrefixGraph& graph, Letter start, const BigInt& value);

// Paths at `start` in increasing order; the k-th has value k.
std::vector<PathRepresentation> enumerate_paths(const PrefixGraph& graph, Letter start, std::size_t count);

// The path order: shorter paths first, then the first differing label
// decides by length.
bool path_less(const PathRepresentation& a, const PathRepresentation& b);

struct SyncEntry {
  std::size_t value;
  Letter terminal;
  PathRepresentation from_a;
  PathRepresentation from_b;
};

struct SyncScan {
  std::size_t l_min;
  std::size_t l_max;
  std::vector<SyncEntry> synchronizing;
  // Longest run of consecutive synchronizing values in [l_min, l_max].
  std::size_t max_run;
  std::size_t max_run_start;
};

SyncScan synchronizing_scan(const PrefixGraph& graph, Letter a, Letter b, std::size_t l_min,
                            std::size_t l_max);

// Text form "a: a.e.a" (start vertex, dot-separated labels, e for the empty
// word). The empty path is "a:".
std::string format_path(const Alphabet& alphabet, const PathRepresentation& path);
PathRepresentation parse_path(const Alphabet& alphabet, std::string_view text);

// Rows (level, vertex, label, |tau^level(label)|) for every proper prefix
// label and level 0..max_level.
struct WeightRow {
  std::size_t level;
  Letter vertex;
  Word label;
  BigInt weight;
};
std::vector<WeightRow> weight_table(const PrefixGraph& graph, std::size_t max_level);

}  // namespace subdyn
