#pragma once

// JSON views of analysis results. Object keys keep insertion order so output
// is byte-stable.

#include "json.hpp"

#include "subdyn/coincidence.hpp"
#include "subdyn/ipcentral.hpp"
#include "subdyn/numeration.hpp"
#include "subdyn/points.hpp"
#include "subdyn/spectral.hpp"
#include "subdyn/strand.hpp"

namespace subdyn {

using Json = nlohmann::ordered_json;

// A number when it fits in int64, otherwise a decimal string.
Json bigint_json(const BigInt& value);
Json substitution_json(const Substitution& sub);
Json matrix_json(const IntMatrix& m);
Json polynomial_json(const IntPolynomial& p);
Json classification_json(const Substitution& sub, const ClassificationReport& report);
Json occurrences_json(const OccurrenceSet& occ);
Json proximality_json(const ProximalityEvidence& evidence);
Json coincidence_json(const Alphabet& alphabet, const CoincidenceVerdict& verdict);
Json delta_set_json(const DeltaValueSet& set);
Json graph_json(const PrefixGraph& graph);
Json path_json(const Alphabet& alphabet, const PathRepresentation& path, const DecodedValue& value);
Json sync_json(const Alphabet& alphabet, const SyncScan& scan);
Json family_json(const Alphabet& alphabet, const FsFamily& family);
Json verification_json(const FsVerification& verification);
Json splitting_json(const InvariantSplitting& splitting);
Json stability_json(const StabilityScan& scan);

}  // namespace subdyn
