#include "subdyn/numeration.hpp"

#include <algorithm>

#include "subdyn/errors.hpp"

namespace subdyn {

PrefixGraph::PrefixGraph(Substitution sub) : sub_(std::move(sub)), out_(sub_.size()) {
  for (std::size_t a = 0; a < sub_.size(); ++a) {
    const Word& img = sub_.image(static_cast<Letter>(a));
    for (std::size_t i = 0; i < img.size(); ++i) {
      out_[a].push_back({static_cast<Letter>(a), img[i], Word(img.begin(), img.begin() + static_cast<std::ptrdiff_t>(i))});
    }
  }
}

std::vector<PrefixEdge> PrefixGraph::edges() const {
  std::vector<PrefixEdge> all;
  for (const auto& list : out_) all.insert(all.end(), list.begin(), list.end());
  return all;
}

namespace {

std::vector<BigInt> next_lengths(const Substitution& sub, const std::vector<BigInt>& lengths) {
  std::vector<BigInt> next(sub.size(), 0);
  for (std::size_t a = 0; a < sub.size(); ++a) {
    for (Letter c : sub.image(static_cast<Letter>(a))) next[a] += lengths[c];
  }
  return next;
}

// Cached |tau^j(letter)| for j = 0, 1, ...
class LengthTable {
 public:
  explicit LengthTable(const Substitution& sub) : sub_(sub), levels_{std::vector<BigInt>(sub.size(), 1)} {}

  const std::vector<BigInt>& at(std::size_t level) {
    while (levels_.size() <= level) levels_.push_back(next_lengths(sub_, levels_.back()));
    return levels_[level];
  }

  BigInt word_length(WordView word, std::size_t level) {
    const auto& lens = at(level);
    BigInt total = 0;
    for (Letter c : word) total += lens[c];
    return total;
  }

 private:
  const Substitution& sub_;
  std::vector<std::vector<BigInt>> levels_;
};

void require_fixed_letter(const Substitution& sub, Letter start) {
  if (start >= sub.size()) throw InputError("start vertex outside the alphabet");
  const Word& img = sub.image(start);
  if (img.front() != start || img.size() < 2) {
    throw InputError(std::string("'") + sub.alphabet().symbol(start) +
                     "' is not a periodic seed of period 1 (its image must begin with it and have length > 1)");
  }
}

struct Encoded {
  PathRepresentation path;
  Letter terminal;
};

Encoded encode_with_terminal(const PrefixGraph& graph, LengthTable& lengths, Letter start,
                             const BigInt& value) {
  const Substitution& sub = graph.substitution();
  require_fixed_letter(sub, start);
  if (value < 0) throw InputError("cannot encode a negative integer");
  Encoded out{{start, {}}, start};
  if (value == 0) return out;

  // Least n with |tau^(n+1)(start)| > value; the path then has n+1 labels.
  std::size_t n = 0;
  while (lengths.at(n + 1)[start] <= value) ++n;

  BigInt remaining = value;
  Letter vertex = start;
  for (std::size_t level = n + 1; level-- > 0;) {
    const auto& lens = lengths.at(level);
    const Word& img = sub.image(vertex);
    // Largest prefix of tau(vertex) whose level-th image fits.
    std::size_t cut = 0;
    BigInt weight = 0;
    while (cut + 1 < img.size() && weight + lens[img[cut]] <= remaining) {
      weight += lens[img[cut]];
      ++cut;
    }
    remaining -= weight;
    out.path.labels.emplace_back(img.begin(), img.begin() + static_cast<std::ptrdiff_t>(cut));
    vertex = img[cut];
  }
  if (remaining != 0) throw std::logic_error("encode_integer: greedy expansion left a remainder");
  out.terminal = vertex;
  return out;
}

}  // namespace

std::vector<BigInt> PrefixGraph::letter_lengths(std::size_t level) const {
  std::vector<BigInt> lens(sub_.size(), 1);
  for (std::size_t j = 0; j < level; ++j) lens = next_lengths(sub_, lens);
  return lens;
}

PrefixGraph build_prefix_graph(const Substitution& sub) { return PrefixGraph(sub); }

DecodedValue decode_path(const PrefixGraph& graph, const PathRepresentation& path,
                         const DecodeOptions& options) {
  const Substitution& sub = graph.substitution();
  if (path.start >= sub.size()) throw InputError("start vertex outside the alphabet");
  const std::size_t count = path.labels.size();
  if (count > 1 && path.labels.front().empty()) {
    throw InputError("improper path: the first label must be nonempty when the path has length > 0");
  }
  LengthTable lengths(sub);
  DecodedValue out{0, path.start, std::nullopt};
  Letter vertex = path.start;
  for (std::size_t j = 0; j < count; ++j) {
    const Word& label = path.labels[j];
    const Word& img = sub.image(vertex);
    if (label.size() >= img.size() || !std::equal(label.begin(), label.end(), img.begin())) {
      throw InputError("invalid path: label " + std::to_string(j) + " ('" + sub.alphabet().render(label) +
                       "') is not an edge at vertex '" + sub.alphabet().symbol(vertex) + "'");
    }
    out.value += lengths.word_length(label, count - 1 - j);
    vertex = img[label.size()];
  }
  out.terminal = vertex;

  if (options.materialize) {
    if (out.value > options.materialize_cap) {
      throw InputError("rho(s) has length " + out.value.str() + ", above the materialization cap " +
                       std::to_string(options.materialize_cap));
    }
    Word rho;
    for (std::size_t j = 0; j < count; ++j) {
      const std::size_t level = count - 1 - j;
      const Word& label = path.labels[j];
      if (label.empty()) continue;
      Word piece = level == 0 ? label : sub.apply(label, static_cast<unsigned>(level));
      rho.insert(rho.end(), piece.begin(), piece.end());
    }
    out.realized = std::move(rho);
  }
  return out;
}

PathRepresentation encode_integer(const PrefixGraph& graph, Letter start, const BigInt& value) {
  LengthTable lengths(graph.substitution());
  return encode_with_terminal(graph, lengths, start, value).path;
}

std::vector<PathRepresentation> enumerate_paths(const PrefixGraph& graph, Letter start, std::size_t count) {
  if (count == 0) throw InputError("count must be at least 1");
  LengthTable lengths(graph.substitution());
  std::vector<PathRepresentation> out;
  out.reserve(count);
  for (std::size_t l = 0; l < count; ++l) out.push_back(encode_with_terminal(graph, lengths, start, l).path);
  return out;
}

bool path_less(const PathRepresentation& a, const PathRepresentation& b) {
  if (a.labels.size() != b.labels.size()) return a.labels.size() < b.labels.size();
  for (std::size_t i = 0; i < a.labels.size(); ++i) {
    if (a.labels[i].size() != b.labels[i].size()) return a.labels[i].size() < b.labels[i].size();
  }
  return false;
}

SyncScan synchronizing_scan(const PrefixGraph& graph, Letter a, Letter b, std::size_t l_min,
                            std::size_t l_max) {
  if (l_max < l_min) throw InputError("empty range");
  require_fixed_letter(graph.substitution(), a);
  require_fixed_letter(graph.substitution(), b);
  LengthTable lengths(graph.substitution());
  SyncScan scan{l_min, l_max, {}, 0, l_min};
  std::size_t run = 0;
  for (std::size_t l = l_min; l <= l_max; ++l) {
    auto ea = encode_with_terminal(graph, lengths, a, l);
    auto eb = encode_with_terminal(graph, lengths, b, l);
    if (ea.terminal == eb.terminal) {
      scan.synchronizing.push_back({l, ea.terminal, std::move(ea.path), std::move(eb.path)});
      ++run;
      if (run > scan.max_run) {
        scan.max_run = run;
        scan.max_run_start = l + 1 - run;
      }
    } else {
      run = 0;
    }
    if (l == l_max) break;
  }
  return scan;
}

namespace {

std::string epsilon_token(const Alphabet& alphabet) {
  return alphabet.find('e') ? "\xCE\xB5" : "e";  // UTF-8 epsilon when 'e' is a letter
}

}  // namespace

std::string format_path(const Alphabet& alphabet, const PathRepresentation& path) {
  std::string out(1, alphabet.symbol(path.start));
  out += ":";
  for (std::size_t i = 0; i < path.labels.size(); ++i) {
    out += i == 0 ? " " : ".";
    out += path.labels[i].empty() ? epsilon_token(alphabet) : alphabet.render(path.labels[i]);
  }
  return out;
}

PathRepresentation parse_path(const Alphabet& alphabet, std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\n' || s.back() == '\r')) s.remove_suffix(1);
    return s;
  };
  text = trim(text);
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) throw InputError("path must look like 'a: a.e.a'");
  const auto head = trim(text.substr(0, colon));
  if (head.size() != 1) throw InputError("path start must be a single letter");
  PathRepresentation path{alphabet.letter(head[0]), {}};
  const auto body = trim(text.substr(colon + 1));
  if (body.empty()) return path;
  const std::string eps = epsilon_token(alphabet);
  std::size_t pos = 0;
  while (true) {
    const auto dot = body.find('.', pos);
    const auto token = trim(body.substr(pos, dot == std::string_view::npos ? std::string_view::npos : dot - pos));
    if (token.empty() || token == eps || token == "\xCE\xB5") {
      path.labels.emplace_back();
    } else {
      path.labels.push_back(alphabet.parse(token));
    }
    if (dot == std::string_view::npos) break;
    pos = dot + 1;
  }
  return path;
}

std::vector<WeightRow> weight_table(const PrefixGraph& graph, std::size_t max_level) {
  LengthTable lengths(graph.substitution());
  std::vector<WeightRow> rows;
  for (std::size_t level = 0; level <= max_level; ++level) {
    for (std::size_t v = 0; v < graph.vertex_count(); ++v) {
      for (const auto& e : graph.out_edges(static_cast<Letter>(v))) {
        rows.push_back({level, e.source, e.label, lengths.word_length(e.label, level)});
      }
    }
  }
  return rows;
}

}  // namespace subdyn
