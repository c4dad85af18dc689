#include "subdyn/serialize.hpp"

#include <limits>

namespace subdyn {

namespace {

std::string letter_string(const Alphabet& alphabet, Letter l) { return std::string(1, alphabet.symbol(l)); }

Json vector_json(const AbelianVector& v) { return Json(v.counts()); }

Json labels_json(const Alphabet& alphabet, const PathRepresentation& path) {
  Json labels = Json::array();
  for (const auto& label : path.labels) labels.push_back(alphabet.render(label));
  return labels;
}

Json window_json(const AgreementWindow& w) {
  return Json{{"position", w.position}, {"length", w.length}, {"truncated", w.truncated}};
}

}  // namespace

Json bigint_json(const BigInt& value) {
  if (value >= std::numeric_limits<std::int64_t>::min() && value <= std::numeric_limits<std::int64_t>::max()) {
    return Json(static_cast<std::int64_t>(value));
  }
  return Json(value.str());
}

Json substitution_json(const Substitution& sub) {
  Json rules = Json::object();
  for (std::size_t a = 0; a < sub.size(); ++a) {
    const auto l = static_cast<Letter>(a);
    rules[letter_string(sub.alphabet(), l)] = sub.alphabet().render(sub.image(l));
  }
  return Json{{"alphabet", sub.alphabet().symbols()}, {"rules", rules}};
}

Json matrix_json(const IntMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.size(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.size(); ++j) row.push_back(m(i, j));
    rows.push_back(row);
  }
  return rows;
}

Json polynomial_json(const IntPolynomial& p) {
  Json coeffs = Json::array();
  for (const auto& c : p.coefficients()) coeffs.push_back(bigint_json(c));
  return coeffs;
}

Json classification_json(const Substitution& sub, const ClassificationReport& report) {
  Json out;
  out["substitution"] = substitution_json(sub);
  out["matrix"] = matrix_json(abelianization_matrix(sub));
  out["primitive"] = report.primitive();
  out["primitivity_exponent"] =
      report.primitivity.exponent ? Json(*report.primitivity.exponent) : Json(nullptr);
  out["char_poly"] = polynomial_json(report.char_poly);
  out["char_poly_text"] = report.char_poly.to_string();
  out["irreducible"] = report.irreducible;
  out["irreducibility_certified"] = report.irreducibility_certified;
  out["irreducibility_method"] = report.irreducibility_method;
  Json factors = Json::array();
  for (const auto& f : report.factorization.factors) factors.push_back(polynomial_json(f));
  out["factors"] = factors;
  out["factorization_complete"] = report.factorization.complete;
  Json roots = Json::array();
  for (const auto& r : report.roots) {
    roots.push_back(Json{{"re", static_cast<double>(r.enclosure.center.real())},
                         {"im", static_cast<double>(r.enclosure.center.imag())},
                         {"radius", static_cast<double>(r.enclosure.radius)},
                         {"exact", r.enclosure.exact},
                         {"unit_circle", to_string(r.where)}});
  }
  out["roots"] = roots;
  if (report.perron) {
    out["dilation"] = Json{{"value", report.perron->dilation},
                           {"error", report.perron->dilation_error},
                           {"bracket", {report.perron->bracket_low, report.perron->bracket_high}}};
    out["perron_vector"] = report.perron->vector;
  } else {
    out["dilation"] = nullptr;
  }
  out["pisot"] = report.pisot_type ? Json(to_string(*report.pisot_type)) : Json(nullptr);
  out["dilation_pisot"] = report.dilation_pisot ? Json(to_string(*report.dilation_pisot)) : Json(nullptr);
  out["irreducible_pisot"] = report.irreducible_pisot;
  out["tolerance"] = report.tolerance;
  return out;
}

Json occurrences_json(const OccurrenceSet& occ) {
  return Json{{"horizon", occ.horizon}, {"count", occ.positions.size()}, {"positions", occ.positions}};
}

Json proximality_json(const ProximalityEvidence& evidence) {
  Json windows = Json::array();
  for (const auto& w : evidence.windows) windows.push_back(window_json(w));
  Json per = Json::array();
  for (const auto& h : evidence.per_horizon) per.push_back(Json{{"horizon", h.horizon}, {"longest", h.longest}});
  return Json{{"horizon", evidence.horizon},
              {"min_window", evidence.min_window},
              {"verdict", evidence.verdict == ProximalityVerdict::EvidenceFor ? "EvidenceFor" : "NoneFound"},
              {"windows", windows},
              {"per_horizon", per}};
}

Json coincidence_json(const Alphabet& alphabet, const CoincidenceVerdict& verdict) {
  if (const auto* w = std::get_if<CoincidenceWitness>(&verdict)) {
    return Json{{"witness", true},
                {"k", w->index},
                {"c", letter_string(alphabet, w->letter)},
                {"s", alphabet.render(w->s)},
                {"t", alphabet.render(w->t)}};
  }
  const auto& none = std::get<NoWitness>(verdict);
  Json values = Json::array();
  for (const auto& v : none.delta_values) values.push_back(vector_json(v));
  return Json{{"witness", false},
              {"horizon", none.horizon},
              {"delta_value_count", none.delta_values.size()},
              {"delta_values", values},
              {"stabilized", none.stabilized}};
}

Json delta_set_json(const DeltaValueSet& set) {
  Json values = Json::array();
  for (const auto& v : set.values) values.push_back(vector_json(v));
  return Json{{"horizon", set.horizon},
              {"cardinality", set.cardinality()},
              {"last_new_index", set.last_new_index},
              {"values", values}};
}

Json graph_json(const PrefixGraph& graph) {
  const auto& alphabet = graph.substitution().alphabet();
  Json vertices = Json::array();
  for (std::size_t a = 0; a < graph.vertex_count(); ++a) vertices.push_back(letter_string(alphabet, static_cast<Letter>(a)));
  Json edges = Json::array();
  for (const auto& e : graph.edges()) {
    edges.push_back(Json{{"from", letter_string(alphabet, e.source)},
                         {"to", letter_string(alphabet, e.target)},
                         {"label", alphabet.render(e.label)}});
  }
  return Json{{"vertices", vertices}, {"edges", edges}};
}

Json path_json(const Alphabet& alphabet, const PathRepresentation& path, const DecodedValue& value) {
  Json out{{"start", letter_string(alphabet, path.start)},
           {"labels", labels_json(alphabet, path)},
           {"text", format_path(alphabet, path)},
           {"value", bigint_json(value.value)},
           {"terminal", letter_string(alphabet, value.terminal)}};
  if (value.realized) out["prefix"] = alphabet.render(*value.realized);
  return out;
}

Json sync_json(const Alphabet& alphabet, const SyncScan& scan) {
  Json entries = Json::array();
  for (const auto& e : scan.synchronizing) {
    entries.push_back(Json{{"value", e.value},
                           {"terminal", letter_string(alphabet, e.terminal)},
                           {"from_a", format_path(alphabet, e.from_a)},
                           {"from_b", format_path(alphabet, e.from_b)}});
  }
  return Json{{"l_min", scan.l_min},
              {"l_max", scan.l_max},
              {"count", scan.synchronizing.size()},
              {"max_run", scan.max_run},
              {"max_run_start", scan.max_run_start},
              {"synchronizing", entries}};
}

Json family_json(const Alphabet& alphabet, const FsFamily& family) {
  Json gens = Json::array();
  for (const auto& g : family.generators) gens.push_back(bigint_json(g));
  Json out{{"generators", gens}};
  if (!family.provenance) {
    out["provenance"] = "searched";
    return out;
  }
  const auto& p = *family.provenance;
  Json paths = Json::array(), companions = Json::array();
  for (const auto& path : p.paths) paths.push_back(format_path(alphabet, path));
  for (const auto& path : p.companion_paths) companions.push_back(format_path(alphabet, path));
  out["provenance"] = Json{{"power", p.power},
                           {"source", letter_string(alphabet, p.source)},
                           {"target", letter_string(alphabet, p.target)},
                           {"via", letter_string(alphabet, p.via)},
                           {"s", alphabet.render(p.s)},
                           {"t", alphabet.render(p.t)},
                           {"r", alphabet.render(p.r)},
                           {"schedule", p.schedule},
                           {"paths", paths},
                           {"companion_paths", companions}};
  return out;
}

Json verification_json(const FsVerification& v) {
  Json failures = Json::array();
  for (const auto& f : v.failures) failures.push_back(Json{{"subset", f.subset}, {"sum", bigint_json(f.sum)}});
  return Json{{"verdict", to_string(v.verdict)},
              {"horizon", v.horizon},
              {"max_subset_size", v.max_subset_size},
              {"checked", v.checked},
              {"unchecked", v.unchecked},
              {"failures", failures},
              {"unchecked_subsets", v.unchecked_subsets}};
}

Json splitting_json(const InvariantSplitting& s) {
  return Json{{"dilation", s.dilation},
              {"unstable", s.unstable},
              {"left", s.left},
              {"stable_basis", s.stable_basis},
              {"eigen_residual", s.eigen_residual},
              {"idempotence_residual", s.idempotence_residual},
              {"invariance_residual", s.invariance_residual},
              {"tolerance", s.tolerance}};
}

Json stability_json(const StabilityScan& scan) {
  return Json{{"envelope", scan.envelope},
              {"seed_norm", scan.seed_norm},
              {"burn_in", scan.burn_in},
              {"empirical_r0", scan.empirical_r0},
              {"cylinder_radius", scan.cylinder_radius},
              {"bounded", scan.bounded},
              {"first_new_maximum", scan.first_new_maximum ? Json(*scan.first_new_maximum) : Json(nullptr)},
              {"conjugation_error", scan.conjugation_error},
              {"final_segments", scan.last.segments.size()}};
}

}  // namespace subdyn
