#include "subdyn/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <numeric>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "subdyn/coincidence.hpp"
#include "subdyn/errors.hpp"
#include "subdyn/ipcentral.hpp"
#include "subdyn/numeration.hpp"
#include "subdyn/points.hpp"
#include "subdyn/serialize.hpp"
#include "subdyn/spec_format.hpp"
#include "subdyn/spectral.hpp"
#include "subdyn/strand.hpp"

namespace subdyn::cli {

namespace {

constexpr unsigned kMaxSeedPeriod = 64;

struct Seed {
  Letter letter;
  unsigned period;
};

class NegativeVerdict : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Seed resolve_seed(const Substitution& sub, const std::string& text) {
  if (text.size() != 1) throw InputError("seed must be a single letter, got '" + text + "'");
  const Letter l = sub.alphabet().letter(text[0]);
  const auto period = seed_period(sub, l, kMaxSeedPeriod);
  if (!period) throw InputError("'" + text + "' does not start a periodic point of the substitution");
  return {l, *period};
}

std::vector<Seed> resolve_seeds(const Substitution& sub, const std::string& text) {
  std::vector<Seed> seeds;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) seeds.push_back(resolve_seed(sub, item));
  return seeds;
}

std::pair<Seed, Seed> seed_pair(const Substitution& sub, const std::string& text) {
  const auto seeds = resolve_seeds(sub, text);
  if (seeds.size() != 2) throw InputError("expected two seeds as --seeds a,b");
  return {seeds[0], seeds[1]};
}

FixedPointStream stream_for(const Substitution& sub, const Seed& seed) {
  return FixedPointStream(sub, seed.letter, seed.period);
}

BigInt parse_bigint(const std::string& text) {
  if (text.empty() || !std::all_of(text.begin(), text.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    throw InputError("expected a nonnegative integer, got '" + text + "'");
  }
  return BigInt(text);
}

std::vector<BigInt> parse_bigint_list(const std::string& text) {
  std::vector<BigInt> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(parse_bigint(item));
  return out;
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

std::string letter_string(const Alphabet& alphabet, Letter l) { return std::string(1, alphabet.symbol(l)); }

// Aligned two-column key/value block.
void kv(std::ostream& out, const std::string& key, const std::string& value) {
  out << std::left << std::setw(22) << key << value << '\n';
}

std::string fmt(double v, int precision = 12) {
  std::ostringstream s;
  s << std::setprecision(precision) << v;
  return s.str();
}

struct Context {
  RunConfig config;
  std::ostream* out;
  std::ostream* err;
  std::ofstream file;

  std::ostream& sink() { return file.is_open() ? static_cast<std::ostream&>(file) : *out; }
  bool json() const { return config.format == Format::Json; }
  void emit(const Json& j) { sink() << j.dump(2) << '\n'; }
};

// classify

struct ClassifyArgs {
  std::string spec;
};

int cmd_classify(Context& ctx, const ClassifyArgs& a) {
  const auto spec = load_substitution_spec(a.spec);
  const auto& sub = spec.substitution;
  const auto report = classify(sub, ctx.config.tolerance);
  if (ctx.json()) {
    ctx.emit(classification_json(sub, report));
    return kExitOk;
  }
  auto& o = ctx.sink();
  std::string rules = sub.render();
  while (!rules.empty() && rules.back() == '\n') rules.pop_back();
  for (auto pos = rules.find('\n'); pos != std::string::npos; pos = rules.find('\n', pos)) rules.replace(pos, 1, ", ");
  kv(o, "substitution", rules);
  std::string prim = yes_no(report.primitive());
  if (report.primitivity.exponent) prim += " (exponent " + std::to_string(*report.primitivity.exponent) + ")";
  kv(o, "primitive", prim);
  kv(o, "char poly", report.char_poly.to_string());
  kv(o, "irreducible", yes_no(report.irreducible) + " (" + report.irreducibility_method +
                           (report.irreducibility_certified ? "" : ", uncertified") + ")");
  std::string factors;
  for (const auto& f : report.factorization.factors) factors += (factors.empty() ? "(" : " (") + f.to_string() + ")";
  kv(o, "factors", factors);
  if (report.perron) kv(o, "dilation", fmt(report.perron->dilation) + " +- " + fmt(report.perron->dilation_error, 3));
  kv(o, "pisot", report.pisot_type ? to_string(*report.pisot_type) : "n/a");
  kv(o, "dilation pisot", report.dilation_pisot ? to_string(*report.dilation_pisot) : "n/a");
  kv(o, "irreducible pisot", yes_no(report.irreducible_pisot));
  o << std::left << std::setw(14) << "root re" << std::setw(14) << "root im" << std::setw(12) << "radius"
    << "unit circle\n";
  for (const auto& r : report.roots) {
    o << std::left << std::setw(14) << fmt(static_cast<double>(r.enclosure.center.real()), 9) << std::setw(14)
      << fmt(static_cast<double>(r.enclosure.center.imag()), 9) << std::setw(12)
      << fmt(static_cast<double>(r.enclosure.radius), 3) << to_string(r.where) << '\n';
  }
  return kExitOk;
}

// expand / occurrences / gaps / proximal

struct ExpandArgs {
  std::string spec, seed;
  std::size_t length = 0;
};

int cmd_expand(Context& ctx, const ExpandArgs& a) {
  const auto sub = load_substitution_spec(a.spec).substitution;
  const auto seed = resolve_seed(sub, a.seed);
  auto stream = stream_for(sub, seed);
  const auto prefix = sub.alphabet().render(stream.expand(a.length));
  if (ctx.json()) {
    ctx.emit(Json{{"seed", a.seed}, {"period", seed.period}, {"length", a.length}, {"prefix", prefix}});
  } else {
    ctx.sink() << prefix << '\n';
  }
  return kExitOk;
}

struct OccurrenceArgs {
  std::string spec, seed, factor;
  std::optional<std::size_t> horizon;
  std::vector<std::size_t> horizons;
};

int cmd_occurrences(Context& ctx, const OccurrenceArgs& a) {
  const auto sub = load_substitution_spec(a.spec).substitution;
  auto stream = stream_for(sub, resolve_seed(sub, a.seed));
  const Word factor = sub.alphabet().parse(a.factor);
  const auto occ = occurrences(stream, factor, a.horizon.value_or(ctx.config.horizon));
  if (ctx.json()) {
    Json j = occurrences_json(occ);
    j = Json{{"seed", a.seed}, {"factor", a.factor}, {"horizon", j["horizon"]}, {"count", j["count"]},
             {"positions", j["positions"]}};
    ctx.emit(j);
  } else {
    for (auto p : occ.positions) ctx.sink() << p << '\n';
  }
  return kExitOk;
}

int cmd_gaps(Context& ctx, const OccurrenceArgs& a) {
  const auto sub = load_substitution_spec(a.spec).substitution;
  auto stream = stream_for(sub, resolve_seed(sub, a.seed));
  const Word factor = sub.alphabet().parse(a.factor);
  std::vector<std::size_t> horizons = a.horizons;
  if (horizons.empty()) {
    const std::size_t h = a.horizon.value_or(ctx.config.horizon);
    for (std::size_t d : {100, 10, 1}) {
      if (h / d >= factor.size() && h / d > 0) horizons.push_back(h / d);
    }
  }
  std::sort(horizons.begin(), horizons.end());
  horizons.erase(std::unique(horizons.begin(), horizons.end()), horizons.end());
  Json rows = Json::array();
  for (auto h : horizons) {
    const auto occ = occurrences(stream, factor, h);
    const auto gap = max_return_gap(occ);
    rows.push_back(Json{{"horizon", h}, {"count", occ.positions.size()}, {"max_gap", gap ? Json(*gap) : Json(nullptr)}});
  }
  if (ctx.json()) {
    ctx.emit(Json{{"seed", a.seed}, {"factor", a.factor}, {"gaps", rows}});
  } else {
    auto& o = ctx.sink();
    o << std::left << std::setw(12) << "horizon" << std::setw(12) << "count" << "max gap\n";
    for (const auto& r : rows) {
      o << std::left << std::setw(12) << r["horizon"].dump() << std::setw(12) << r["count"].dump()
        << (r["max_gap"].is_null() ? "none" : r["max_gap"].dump()) << '\n';
    }
  }
  return kExitOk;
}

struct ProximalArgs {
  std::string spec, seeds;
  std::size_t min_window = 4;
  std::optional<std::size_t> horizon;
  bool expect_evidence = false;
};

int cmd_proximal(Context& ctx, const ProximalArgs& a) {
  const auto sub = load_substitution_spec(a.spec).substitution;
  const auto [sa, sb] = seed_pair(sub, a.seeds);
  auto x = stream_for(sub, sa);
  auto y = stream_for(sub, sb);
  const auto ev = proximality_scan(x, y, a.min_window, a.horizon.value_or(ctx.config.horizon));
  if (ctx.json()) {
    Json j{{"seeds", a.seeds}};
    j.update(proximality_json(ev));
    ctx.emit(j);
  } else {
    auto& o = ctx.sink();
    kv(o, "verdict", ev.verdict == ProximalityVerdict::EvidenceFor ? "EvidenceFor" : "NoneFound");
    kv(o, "windows", std::to_string(ev.windows.size()));
    for (const auto& h : ev.per_horizon) kv(o, "longest below " + std::to_string(h.horizon), std::to_string(h.longest));
  }
  if (a.expect_evidence && ev.verdict != ProximalityVerdict::EvidenceFor) return kExitNegative;
  return kExitOk;
}

// coincide

struct CoincideArgs {
  std::string spec;
  std::optional<std::string> seeds;
  std::optional<std::size_t> horizon;
  std::optional<std::size_t> deep;
  bool expect_witness = false;
};

int cmd_coincide(Context& ctx, const CoincideArgs& a) {
  const auto sub = load_substitution_spec(a.spec).substitution;
  const auto& alphabet = sub.alphabet();
  std::vector<std::pair<Seed, Seed>> pairs;
  if (a.seeds) {
    pairs.push_back(seed_pair(sub, *a.seeds));
  } else {
    const auto all = list_periodic_seeds(sub, kMaxSeedPeriod);
    for (std::size_t i = 0; i < all.size(); ++i) {
      for (std::size_t j = i + 1; j < all.size(); ++j) {
        pairs.push_back({{all[i].letter, all[i].period}, {all[j].letter, all[j].period}});
      }
    }
  }
  const std::size_t horizon = a.horizon.value_or(ctx.config.horizon);
  bool all_witnessed = true;
  Json results = Json::array();
  for (const auto& [sa, sb] : pairs) {
    auto x = stream_for(sub, sa);
    auto y = stream_for(sub, sb);
    const auto verdict = a.deep ? find_strong_coincidence_deep(x, y, horizon, std::max(*a.deep, horizon))
                                : find_strong_coincidence(x, y, horizon);
    Json j{{"seeds", letter_string(alphabet, sa.letter) + "," + letter_string(alphabet, sb.letter)}};
    j.update(coincidence_json(alphabet, verdict));
    if (const auto* w = std::get_if<CoincidenceWitness>(&verdict)) {
      j["validated"] = validate_witness(x, y, *w);
    } else {
      all_witnessed = false;
    }
    results.push_back(j);
  }
  if (ctx.json()) {
    ctx.emit(a.seeds ? results.at(0) : Json{{"pairs", results}});
  } else {
    auto& o = ctx.sink();
    for (const auto& r : results) {
      if (r["witness"].get<bool>()) {
        o << r["seeds"].get<std::string>() << ": witness k=" << r["k"].dump() << " c=" << r["c"].get<std::string>()
          << " s=" << r["s"].get<std::string>() << " t=" << r["t"].get<std::string>() << '\n';
      } else {
        o << r["seeds"].get<std::string>() << ": no witness below " << r["horizon"].dump() << " ("
          << r["delta_value_count"].dump() << " distinct deltas)\n";
      }
    }
  }
  if (a.expect_witness && (!all_witnessed || pairs.empty())) return kExitNegative;
  return kExitOk;
}

// num

struct NumArgs {
  std::string spec, start, seeds, value, path;
  std::size_t count = 10, levels = 4, from = 0, to = 100;
  bool materialize = false;
};

// Prefix automaton for a start letter, raising tau to the seed's period.
std::pair<PrefixGraph, unsigned> graph_for(const Substitution& sub, const std::string& start) {
  const auto seed = resolve_seed(sub, start);
  return {PrefixGraph(sub.power(seed.period)), seed.period};
}

int cmd_num_graph(Context& ctx, const NumArgs& a) {
  const auto sub = load_substitution_spec(a.spec).substitution;
  const PrefixGraph graph(sub);
  if (ctx.json()) {
    ctx.emit(graph_json(graph));
  } else {
    const auto& alphabet = sub.alphabet();
    for (const auto& e : graph.edges()) {
      ctx.sink() << letter_string(alphabet, e.source) << " -> " << letter_string(alphabet, e.target) << "  "
                 << (e.label.empty() ? "e" : alphabet.render(e.label)) << '\n';
    }
  }
  return kExitOk;
}

int cmd_num_encode(Context& ctx, const NumArgs& a) {
  const auto sub = load_substitution_spec(a.spec).substitution;
  const auto [graph, power] = graph_for(sub, a.start);
  const BigInt value = parse_bigint(a.value);
  const auto path = encode_integer(graph, sub.alphabet().letter(a.start[0]), value);
  if (ctx.json()) {
    Json j = path_json(sub.alphabet(), path, decode_path(graph, path));
    j["power"] = power;
    ctx.emit(j);
  } else {
    ctx.sink() << format_path(sub.alphabet(), path) << '\n';
  }
  return kExitOk;
}

int cmd_num_decode(Context& ctx, const NumArgs& a) {
  const auto sub = load_substitution_spec(a.spec).substitution;
  const auto path = parse_path(sub.alphabet(), a.path);
  const auto [graph, power] = graph_for(sub, letter_string(sub.alphabet(), path.start));
  DecodeOptions opts;
  opts.materialize = a.materialize;
  const auto decoded = decode_path(graph, path, opts);
  if (ctx.json()) {
    Json j = path_json(sub.alphabet(), path, decoded);
    j["power"] = power;
    ctx.emit(j);
  } else {
    ctx.sink() << decoded.value;
    if (decoded.realized) ctx.sink() << ' ' << sub.alphabet().render(*decoded.realized);
    ctx.sink() << '\n';
  }
  return kExitOk;
}

int cmd_num_list(Context& ctx, const NumArgs& a) {
  const auto sub = load_substitution_spec(a.spec).substitution;
  const auto [graph, power] = graph_for(sub, a.start);
  const auto paths = enumerate_paths(graph, sub.alphabet().letter(a.start[0]), a.count);
  if (ctx.json()) {
    Json rows = Json::array();
    for (const auto& p : paths) rows.push_back(path_json(sub.alphabet(), p, decode_path(graph, p)));
    ctx.emit(Json{{"start", a.start}, {"power", power}, {"paths", rows}});
  } else {
    for (std::size_t i = 0; i < paths.size(); ++i) ctx.sink() << i << '\t' << format_path(sub.alphabet(), paths[i]) << '\n';
  }
  return kExitOk;
}

int cmd_num_sync(Context& ctx, const NumArgs& a) {
  const auto sub = load_substitution_spec(a.spec).substitution;
  const auto [sa, sb] = seed_pair(sub, a.seeds);
  const unsigned power = std::lcm(sa.period, sb.period);
  const PrefixGraph graph(sub.power(power));
  if (a.from > a.to) throw InputError("--from must not exceed --to");
  const auto scan = synchronizing_scan(graph, sa.letter, sb.letter, a.from, a.to);
  if (ctx.json()) {
    Json j{{"seeds", a.seeds}, {"power", power}};
    j.update(sync_json(sub.alphabet(), scan));
    ctx.emit(j);
  } else {
    auto& o = ctx.sink();
    kv(o, "synchronizing", std::to_string(scan.synchronizing.size()) + " of " + std::to_string(a.to - a.from + 1));
    kv(o, "longest run", std::to_string(scan.max_run) + " from " + std::to_string(scan.max_run_start));
    for (const auto& e : scan.synchronizing) {
      o << e.value << '\t' << format_path(sub.alphabet(), e.from_a) << '\t' << format_path(sub.alphabet(), e.from_b) << '\n';
    }
  }
  return kExitOk;
}

int cmd_num_weights(Context& ctx, const NumArgs& a) {
  const auto sub = load_substitution_spec(a.spec).substitution;
  const PrefixGraph graph(sub);
  auto& o = ctx.sink();
  o << "level,vertex,label,weight\n";
  for (const auto& row : weight_table(graph, a.levels)) {
    o << row.level << ',' << sub.alphabet().symbol(row.vertex) << ','
      << (row.label.empty() ? "e" : sub.alphabet().render(row.label)) << ',' << row.weight << '\n';
  }
  return kExitOk;
}

// ipset

struct IpsetArgs {
  std::string spec, seeds, seed, factor, generators;
  std::size_t count = 2, depth = 3;
  unsigned max_power = 8;
  std::vector<std::size_t> schedule;
  std::optional<std::size_t> horizon;
  std::optional<std::size_t> max_subset;
  bool verify = false;
  bool expect_pass = false;
};

constexpr std::size_t kAutoHorizonCap = 50'000'000;

// Horizon that covers every subset sum, or the configured default when that
// would be unreasonably large.
std::size_t covering_horizon(const std::vector<BigInt>& generators, std::size_t factor_len, std::size_t fallback) {
  BigInt total = factor_len;
  for (const auto& g : generators) total += g;
  if (total + 1 <= kAutoHorizonCap) return std::max(fallback, static_cast<std::size_t>(total + 1));
  return fallback;
}

int cmd_ipset_build(Context& ctx, const IpsetArgs& a) {
  const auto sub = load_substitution_spec(a.spec).substitution;
  const auto& alphabet = sub.alphabet();
  const auto [sa, sb] = seed_pair(sub, a.seeds);
  auto x = stream_for(sub, sa);
  auto y = stream_for(sub, sb);
  const auto verdict = find_strong_coincidence(x, y, a.horizon.value_or(ctx.config.horizon));
  const auto* witness = std::get_if<CoincidenceWitness>(&verdict);
  if (!witness) throw NegativeVerdict("no strong coincidence witness below the horizon");
  FsBuildOptions opts;
  opts.max_power = a.max_power;
  opts.schedule = a.schedule;
  const auto family = build_fs_family(sub, *witness, a.count, opts);
  Json j{{"seeds", a.seeds},
         {"witness", {{"k", witness->index}, {"c", letter_string(alphabet, witness->letter)},
                      {"s", alphabet.render(witness->s)}, {"t", alphabet.render(witness->t)}}}};
  j.update(family_json(alphabet, family));
  std::optional<FsVerification> check;
  if (a.verify) {
    const Word target{family.provenance->target};
    const std::size_t h = a.horizon ? *a.horizon : covering_horizon(family.generators, 1, ctx.config.horizon);
    const auto occ = occurrences(x, target, h);
    check = verify_finite_sums(family, occ, a.max_subset.value_or(family.generators.size()));
    j["verification"] = verification_json(*check);
  }
  if (ctx.json()) {
    ctx.emit(j);
  } else {
    auto& o = ctx.sink();
    kv(o, "witness", "k=" + j["witness"]["k"].dump() + " c=" + j["witness"]["c"].get<std::string>());
    kv(o, "power", j["provenance"]["power"].dump());
    kv(o, "r", j["provenance"]["r"].get<std::string>());
    for (std::size_t i = 0; i < family.generators.size(); ++i) {
      o << "n_" << i << '\t' << family.generators[i] << '\t' << j["provenance"]["paths"][i].get<std::string>() << '\n';
    }
    if (check) kv(o, "verification", to_string(check->verdict));
  }
  if (a.expect_pass && check && check->verdict != FsVerdict::Pass) return kExitNegative;
  return kExitOk;
}

int cmd_ipset_verify(Context& ctx, const IpsetArgs& a) {
  const auto sub = load_substitution_spec(a.spec).substitution;
  auto x = stream_for(sub, resolve_seed(sub, a.seed));
  const Word factor = sub.alphabet().parse(a.factor);
  FsFamily family;
  family.generators = parse_bigint_list(a.generators);
  for (std::size_t i = 1; i < family.generators.size(); ++i) {
    if (family.generators[i] <= family.generators[i - 1]) throw InputError("generators must be strictly increasing");
  }
  const std::size_t h = a.horizon ? *a.horizon : covering_horizon(family.generators, factor.size(), ctx.config.horizon);
  const auto occ = occurrences(x, factor, h);
  const auto check = verify_finite_sums(family, occ, a.max_subset.value_or(ctx.config.max_subset_size));
  if (ctx.json()) {
    Json j{{"seed", a.seed}, {"factor", a.factor}};
    j.update(family_json(sub.alphabet(), family));
    j["verification"] = verification_json(check);
    ctx.emit(j);
  } else {
    auto& o = ctx.sink();
    kv(o, "verdict", to_string(check.verdict));
    kv(o, "checked", std::to_string(check.checked));
    kv(o, "unchecked", std::to_string(check.unchecked));
    for (const auto& f : check.failures) {
      std::string subset;
      for (auto i : f.subset) subset += (subset.empty() ? "" : ",") + std::to_string(i);
      o << "fail {" << subset << "} sum " << f.sum << '\n';
    }
  }
  if (a.expect_pass && check.verdict != FsVerdict::Pass) return kExitNegative;
  return kExitOk;
}

int cmd_ipset_search(Context& ctx, const IpsetArgs& a) {
  const auto sub = load_substitution_spec(a.spec).substitution;
  auto x = stream_for(sub, resolve_seed(sub, a.seed));
  const Word factor = sub.alphabet().parse(a.factor);
  if (a.depth == 0) throw InputError("--depth must be at least 1");
  const auto occ = occurrences(x, factor, a.horizon.value_or(ctx.config.horizon));
  const auto family = search_ip_witness(occ, a.depth);
  Json j{{"seed", a.seed}, {"factor", a.factor}, {"horizon", occ.horizon}, {"depth", a.depth}, {"found", family.has_value()}};
  if (family) {
    j.update(family_json(sub.alphabet(), *family));
    j["verification"] = verification_json(verify_finite_sums(*family, occ, a.depth));
  }
  if (ctx.json()) {
    ctx.emit(j);
  } else if (family) {
    std::string gens;
    for (const auto& g : family->generators) gens += (gens.empty() ? "" : ",") + g.str();
    ctx.sink() << "{" << gens << "}\n";
  } else {
    ctx.sink() << "none\n";
  }
  if (a.expect_pass && !family) return kExitNegative;
  return kExitOk;
}

// strand

struct StrandArgs {
  std::string spec, word, seeds, csv, svg;
  std::optional<std::size_t> iterations;
  std::size_t burn_in = 3;
  std::optional<std::size_t> delta_horizon;
  bool expect_bounded = false;
};

InvariantSplitting splitting_for(const Substitution& sub, const RunConfig& config) {
  return invariant_splitting(classify(sub, config.tolerance), abelianization_matrix(sub));
}

int cmd_strand_scan(Context& ctx, const StrandArgs& a) {
  const auto sub = load_substitution_spec(a.spec).substitution;
  const auto splitting = splitting_for(sub, ctx.config);
  const auto seed = build_strand(sub.alphabet().parse(a.word), sub.size());
  StabilityOptions opts;
  opts.burn_in = a.burn_in;
  const auto scan = stability_scan(sub, seed, a.iterations.value_or(ctx.config.iterations), splitting, opts);
  Json j{{"word", a.word}};
  j.update(stability_json(scan));
  j["splitting"] = splitting_json(splitting);
  if (!a.seeds.empty()) {
    const auto [sa, sb] = seed_pair(sub, a.seeds);
    auto x = stream_for(sub, sa);
    auto y = stream_for(sub, sb);
    const std::size_t h = a.delta_horizon.value_or(ctx.config.horizon);
    j["delta"] = Json{{"seeds", a.seeds}, {"horizon", h}, {"max_stable_norm", max_stable_delta_norm(x, y, h, splitting)},
                      {"value_set", delta_set_json(delta_value_set(x, y, h))["cardinality"]}};
  }
  if (ctx.json()) {
    ctx.emit(j);
  } else {
    auto& o = ctx.sink();
    o << std::left << std::setw(12) << "iteration" << "max stable norm\n";
    for (std::size_t k = 0; k < scan.envelope.size(); ++k) {
      o << std::left << std::setw(12) << (k + 1) << fmt(scan.envelope[k]) << '\n';
    }
    kv(o, "empirical R0", fmt(scan.empirical_r0));
    kv(o, "cylinder radius", fmt(scan.cylinder_radius));
    kv(o, "bounded", yes_no(scan.bounded));
    kv(o, "new max after burn-in",
       scan.first_new_maximum ? "iteration " + std::to_string(*scan.first_new_maximum + 1) : "none");
    kv(o, "conjugation error", fmt(scan.conjugation_error, 3));
    if (j.contains("delta")) kv(o, "max |pr^s delta|", fmt(j["delta"]["max_stable_norm"].get<double>()));
  }
  if (a.expect_bounded && !scan.bounded) return kExitNegative;
  return kExitOk;
}

int cmd_strand_export(Context& ctx, const StrandArgs& a) {
  const auto sub = load_substitution_spec(a.spec).substitution;
  const auto splitting = splitting_for(sub, ctx.config);
  std::vector<Strand> iterations{build_strand(sub.alphabet().parse(a.word), sub.size())};
  const std::size_t count = a.iterations.value_or(ctx.config.iterations);
  for (std::size_t k = 0; k < count; ++k) iterations.push_back(substitute_strand(sub, iterations.back()));
  auto write = [&](const std::string& path, const std::function<void(std::ostream&)>& body) {
    if (path.empty() || path == "-") {
      body(ctx.sink());
      return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw InputError("cannot write '" + path + "'");
    body(f);
  };
  if (a.csv.empty() && a.svg.empty()) {
    write("", [&](std::ostream& o) { write_strand_csv(o, sub.alphabet(), iterations, splitting); });
    return kExitOk;
  }
  if (!a.csv.empty()) write(a.csv, [&](std::ostream& o) { write_strand_csv(o, sub.alphabet(), iterations, splitting); });
  if (!a.svg.empty()) write(a.svg, [&](std::ostream& o) { write_stable_svg(o, iterations.back(), splitting); });
  return kExitOk;
}

std::size_t default_horizon(std::ostream& err, bool& ok) {
  ok = true;
  const char* env = std::getenv("SUBDYN_HORIZON");
  if (!env || !*env) return RunConfig{}.horizon;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(env, &end, 10);
  if (*end != '\0' || v == 0 || env[0] == '-') {
    err << "error: SUBDYN_HORIZON must be a positive integer\n";
    ok = false;
    return 0;
  }
  return static_cast<std::size_t>(v);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Context ctx;
  ctx.out = &out;
  ctx.err = &err;
  bool env_ok = true;
  ctx.config.horizon = default_horizon(err, env_ok);
  if (!env_ok) return kExitInputError;

  CLI::App app{"Substitution dynamics workbench", "subdyn"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");
  app.fallthrough();
  std::string format = "json";
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "text"}));
  app.add_option("-o,--output", ctx.config.output, "Write to a file instead of standard output");
  app.add_option("--tolerance", ctx.config.tolerance, "Numeric tolerance")->check(CLI::PositiveNumber);

  std::function<int()> action;
  auto positive = CLI::PositiveNumber;

  ClassifyArgs classify_args;
  auto* classify_cmd = app.add_subcommand("classify", "Spectral classification");
  classify_cmd->add_option("spec", classify_args.spec, "Substitution spec file")->required();
  classify_cmd->callback([&] { action = [&] { return cmd_classify(ctx, classify_args); }; });

  ExpandArgs expand_args;
  auto* expand_cmd = app.add_subcommand("expand", "Prefix of a periodic point");
  expand_cmd->add_option("spec", expand_args.spec)->required();
  expand_cmd->add_option("--seed", expand_args.seed, "Seed letter")->required();
  expand_cmd->add_option("--length", expand_args.length, "Prefix length")->required();
  expand_cmd->callback([&] { action = [&] { return cmd_expand(ctx, expand_args); }; });

  OccurrenceArgs occ_args;
  auto* occ_cmd = app.add_subcommand("occurrences", "Occurrence positions of a factor");
  occ_cmd->add_option("spec", occ_args.spec)->required();
  occ_cmd->add_option("--seed", occ_args.seed)->required();
  occ_cmd->add_option("--factor", occ_args.factor)->required();
  occ_cmd->add_option("--horizon", occ_args.horizon)->check(positive);
  occ_cmd->callback([&] { action = [&] { return cmd_occurrences(ctx, occ_args); }; });

  auto* gaps_cmd = app.add_subcommand("gaps", "Maximal return gaps across horizons");
  gaps_cmd->add_option("spec", occ_args.spec)->required();
  gaps_cmd->add_option("--seed", occ_args.seed)->required();
  gaps_cmd->add_option("--factor", occ_args.factor)->required();
  gaps_cmd->add_option("--horizon", occ_args.horizon)->check(positive);
  gaps_cmd->add_option("--horizons", occ_args.horizons, "Explicit horizon list")->delimiter(',')->check(positive);
  gaps_cmd->callback([&] { action = [&] { return cmd_gaps(ctx, occ_args); }; });

  ProximalArgs prox_args;
  auto* prox_cmd = app.add_subcommand("proximal", "Agreement windows between two periodic points");
  prox_cmd->add_option("spec", prox_args.spec)->required();
  prox_cmd->add_option("--seeds", prox_args.seeds, "a,b")->required();
  prox_cmd->add_option("--min-window", prox_args.min_window)->check(positive);
  prox_cmd->add_option("--horizon", prox_args.horizon)->check(positive);
  prox_cmd->add_flag("--expect-evidence", prox_args.expect_evidence);
  prox_cmd->callback([&] { action = [&] { return cmd_proximal(ctx, prox_args); }; });

  CoincideArgs co_args;
  auto* co_cmd = app.add_subcommand("coincide", "Strong coincidence search");
  co_cmd->add_option("spec", co_args.spec)->required();
  co_cmd->add_option("--seeds", co_args.seeds, "a,b; all periodic seeds pairwise when omitted");
  co_cmd->add_option("--horizon", co_args.horizon)->check(positive);
  co_cmd->add_option("--deep", co_args.deep, "Double the horizon up to this bound")->check(positive);
  co_cmd->add_flag("--expect-witness", co_args.expect_witness);
  co_cmd->callback([&] { action = [&] { return cmd_coincide(ctx, co_args); }; });

  NumArgs num_args;
  auto* num_cmd = app.add_subcommand("num", "Prefix-automaton numeration");
  num_cmd->require_subcommand(1);
  auto* num_graph = num_cmd->add_subcommand("graph", "Prefix automaton");
  num_graph->add_option("spec", num_args.spec)->required();
  num_graph->callback([&] { action = [&] { return cmd_num_graph(ctx, num_args); }; });
  auto* num_encode = num_cmd->add_subcommand("encode", "Path representing an integer");
  num_encode->add_option("spec", num_args.spec)->required();
  num_encode->add_option("--start", num_args.start)->required();
  num_encode->add_option("value", num_args.value)->required();
  num_encode->callback([&] { action = [&] { return cmd_num_encode(ctx, num_args); }; });
  auto* num_decode = num_cmd->add_subcommand("decode", "Integer represented by a path");
  num_decode->add_option("spec", num_args.spec)->required();
  num_decode->add_option("path", num_args.path, "e.g. 'a: a.e.a'")->required();
  num_decode->add_flag("--materialize", num_args.materialize, "Also print the realized prefix");
  num_decode->callback([&] { action = [&] { return cmd_num_decode(ctx, num_args); }; });
  auto* num_list = num_cmd->add_subcommand("list", "First paths in increasing order");
  num_list->add_option("spec", num_args.spec)->required();
  num_list->add_option("--start", num_args.start)->required();
  num_list->add_option("--count", num_args.count);
  num_list->callback([&] { action = [&] { return cmd_num_list(ctx, num_args); }; });
  auto* num_sync = num_cmd->add_subcommand("sync", "Synchronizing values for two seeds");
  num_sync->add_option("spec", num_args.spec)->required();
  num_sync->add_option("--seeds", num_args.seeds)->required();
  num_sync->add_option("--from", num_args.from);
  num_sync->add_option("--to", num_args.to);
  num_sync->callback([&] { action = [&] { return cmd_num_sync(ctx, num_args); }; });
  auto* num_weights = num_cmd->add_subcommand("weights", "Weight table as CSV");
  num_weights->add_option("spec", num_args.spec)->required();
  num_weights->add_option("--levels", num_args.levels);
  num_weights->callback([&] { action = [&] { return cmd_num_weights(ctx, num_args); }; });

  IpsetArgs ip_args;
  auto* ip_cmd = app.add_subcommand("ipset", "Finite-sums families");
  ip_cmd->require_subcommand(1);
  auto* ip_build = ip_cmd->add_subcommand("build", "Family from a coincidence witness");
  ip_build->add_option("spec", ip_args.spec)->required();
  ip_build->add_option("--seeds", ip_args.seeds)->required();
  ip_build->add_option("--count", ip_args.count);
  ip_build->add_option("--max-power", ip_args.max_power)->check(positive);
  ip_build->add_option("--schedule", ip_args.schedule)->delimiter(',');
  ip_build->add_option("--horizon", ip_args.horizon)->check(positive);
  ip_build->add_option("--max-subset", ip_args.max_subset)->check(positive);
  ip_build->add_flag("--verify", ip_args.verify);
  ip_build->add_flag("--expect-pass", ip_args.expect_pass);
  ip_build->callback([&] { action = [&] { return cmd_ipset_build(ctx, ip_args); }; });
  auto* ip_verify = ip_cmd->add_subcommand("verify", "Check subset sums against an occurrence set");
  ip_verify->add_option("spec", ip_args.spec)->required();
  ip_verify->add_option("--seed", ip_args.seed)->required();
  ip_verify->add_option("--factor", ip_args.factor)->required();
  ip_verify->add_option("--generators", ip_args.generators, "Comma-separated, increasing")->required();
  ip_verify->add_option("--horizon", ip_args.horizon)->check(positive);
  ip_verify->add_option("--max-subset", ip_args.max_subset)->check(positive);
  ip_verify->add_flag("--expect-pass", ip_args.expect_pass);
  ip_verify->callback([&] { action = [&] { return cmd_ipset_verify(ctx, ip_args); }; });
  auto* ip_search = ip_cmd->add_subcommand("search", "Backtracking search for a family");
  ip_search->add_option("spec", ip_args.spec)->required();
  ip_search->add_option("--seed", ip_args.seed)->required();
  ip_search->add_option("--factor", ip_args.factor)->required();
  ip_search->add_option("--depth", ip_args.depth);
  ip_search->add_option("--horizon", ip_args.horizon)->check(positive);
  ip_search->add_flag("--expect-found", ip_args.expect_pass);
  ip_search->callback([&] { action = [&] { return cmd_ipset_search(ctx, ip_args); }; });

  StrandArgs st_args;
  auto* st_cmd = app.add_subcommand("strand", "Strand geometry");
  st_cmd->require_subcommand(1);
  auto* st_scan = st_cmd->add_subcommand("scan", "Stable-norm envelope under iteration");
  st_scan->add_option("spec", st_args.spec)->required();
  st_scan->add_option("--word", st_args.word, "Seed strand pattern")->required();
  st_scan->add_option("--iterations", st_args.iterations)->check(positive);
  st_scan->add_option("--burn-in", st_args.burn_in);
  st_scan->add_option("--seeds", st_args.seeds, "Also bound |pr^s delta_k| for these seeds");
  st_scan->add_option("--delta-horizon", st_args.delta_horizon)->check(positive);
  st_scan->add_flag("--expect-bounded", st_args.expect_bounded);
  st_scan->callback([&] { action = [&] { return cmd_strand_scan(ctx, st_args); }; });
  auto* st_export = st_cmd->add_subcommand("export", "CSV of iterates and SVG of stable projections");
  st_export->add_option("spec", st_args.spec)->required();
  st_export->add_option("--word", st_args.word)->required();
  st_export->add_option("--iterations", st_args.iterations)->check(positive);
  st_export->add_option("--csv", st_args.csv);
  st_export->add_option("--svg", st_args.svg);
  st_export->callback([&] { action = [&] { return cmd_strand_export(ctx, st_args); }; });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  }

  ctx.config.format = format == "text" ? Format::Text : Format::Json;
  if (!ctx.config.output.empty()) {
    ctx.file.open(ctx.config.output, std::ios::binary);
    if (!ctx.file) {
      err << "error: cannot write '" << ctx.config.output << "'\n";
      return kExitInputError;
    }
  }
  const std::string command = args.empty() ? "" : [&] {
    std::string c;
    for (const auto* sub = app.get_subcommands().empty() ? nullptr : app.get_subcommands().front(); sub;) {
      c += (c.empty() ? "" : " ") + sub->get_name();
      const auto nested = sub->get_subcommands();
      sub = nested.empty() ? nullptr : nested.front();
    }
    return c;
  }();
  try {
    return action();
  } catch (const NegativeVerdict& e) {
    err << command << ": " << e.what() << '\n';
    return kExitNegative;
  } catch (const InputError& e) {
    err << command << ": input error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const UnsupportedInput& e) {
    err << command << ": unsupported input: " << e.what() << '\n';
    return kExitInputError;
  } catch (const std::overflow_error& e) {
    err << command << ": overflow: " << e.what() << '\n';
    return kExitInputError;
  }
}

}  // namespace subdyn::cli
