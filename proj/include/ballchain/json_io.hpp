#pragma once

#include <string>

#include "json.hpp"

#include "ballchain/approximation.hpp"
#include "ballchain/automorphism.hpp"
#include "ballchain/criteria.hpp"
#include "ballchain/loewner.hpp"
#include "ballchain/operator_analysis.hpp"
#include "ballchain/polymap.hpp"

namespace ballchain {

using Json = nlohmann::ordered_json;

// scalars: {"re": x, "im": y}; rational-string mode {"re": "p/q", ...}
Json complex_to_json(cdouble c);

// Operator: {"dim": n, "entries": [[scalar, ...], ...]} with numeric or
// rational-string scalars; optional "eigenvalues": [scalar, ...] (fully
// rational lists enable the exact resonance mode).
Operator operator_from_json(const Json& j);
Json operator_to_json(const Operator& a);

// PolyMap: {"dim": n, "coords": [{"terms": [{"exp": [e1..en], "re":, "im":}]}]}
// Rational-string coefficients are accepted for validating normalization
// exactly; values are stored as doubles.
PolyMap polymap_from_json(const Json& j);
Json polymap_to_json(const PolyMap& f);

// Word: {"dim": n, "factors": [{"kind": "shear"|"overshear"|"linear", ...}]}
AutomorphismWord word_from_json(const Json& j);
Json word_to_json(const AutomorphismWord& w);

// {"words": [word, ...]} or a bare array.
std::vector<AutomorphismWord> words_from_json(const Json& j);

// Field: {"A": operator, "pieces": [{"duration": t, "kind": "linear"} |
//         {"duration": t, "kind": "spirallike", "map": polymap | "word": word}]}
HerglotzField field_from_json(const Json& j, const FieldOptions& options = {});

Json profile_to_json(const OperatorProfile& p);
Json resonance_to_json(const ResonanceVerdict& v);
Json report_to_json(const CriterionReport& r);
Json flow_to_json(const FlowResult& fr);
Json parametric_to_json(const ParametricLimit& pl);
Json approximation_to_json(const ApproximationRun& run);

Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

}  // namespace ballchain
