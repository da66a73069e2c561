#pragma once

#include <json.hpp>
#include <string>

#include "nomic/horizon.hpp"

namespace nomic {

// nlohmann::json keeps keys sorted, so dumps are canonical byte-for-byte.
using Json = nlohmann::json;

// Scalars: prime-field values are JSON integers (canonical residues); rational
// values are strings like "2" or "-3/4" so exactness survives the trip.
Json to_json(const Scalar& s);
Scalar scalar_from_json(const Field& f, const Json& j);

Json to_json(const Vec& v);
Vec vec_from_json(const Field& f, const Json& j);

// Matrices are arrays of row arrays; the column count disambiguates an empty
// row list.
Json to_json(const Matrix& m);
Matrix matrix_from_json(const Field& f, const Json& j, std::size_t cols_if_empty = 0);

// {"field": "Z2", "factors": [{"n": 1, "name": "S"}, ...]}
Json to_json(const PhaseSpace& space);
PhaseSpace space_from_json(const Json& j);

// {"space": ..., "matrix": ..., "shift": ...}; parsing runs the gate.
Json to_json(const AffineSymplectic& t);
AffineSymplectic transform_from_json(const Json& j);

// {"space": ..., "rows": ...}
Json to_json(const LinearVariable& z);
LinearVariable variable_from_json(const Json& j);

// {"space": ..., "known": ..., "value_point": ...}
Json to_json(const EpistemicState& e);
EpistemicState epistemic_from_json(const Json& j);

std::string to_string(ComplementRule rule);
ComplementRule complement_rule_from_json(const Json& j);

// {"space": ..., "manifest": ..., "rule": ...} plus the derived "momentum"
// block, which parsing recomputes and checks.
Json to_json(const ToySubject& s);
ToySubject subject_from_json(const Json& j);

// {"object": ..., "subject": ..., "ready": ..., "transform": {"matrix", "shift"}}
// plus the derived "measured" rows, recomputed and checked on parse.
Json to_json(const Measurement& m);
Measurement measurement_from_json(const Json& j);

struct ScenarioDoc {
  Scenario scenario;
  bool all_initial = false;  // file said "initial": "all"
};

// {"space": ..., "initial": [...] | "all", "steps": [{"label", "transform"}],
//  "subjects": [{"label", "rows"}]}
Json to_json(const Scenario& sc);
ScenarioDoc scenario_from_json(const Json& j);

Json to_json(const ScenarioTrace& t, const std::vector<ScenarioPointer>& pointers);
ScenarioTrace trace_from_json(const Json& j);

Json to_json(const HorizonReport& rep);
HorizonReport report_from_json(const Json& j);

// dump with two-space indent and trailing newline; keys are already sorted.
std::string canonical_dump(const Json& j);

// Same document minus the wall-clock field, for byte comparisons.
Json strip_elapsed(Json j);

// Write via a sibling temp file and rename, so readers never see a torn file.
void write_text_atomic(const std::string& path, const std::string& content);

Json read_json_file(const std::string& path);  // ParseError on bad syntax/IO

}  // namespace nomic
