#pragma once

// JSON records for every analysis, plus the schema they are checked against.
// Every record has "kind" and "version"; field names never change between
// runs and no field depends on hash or thread ordering.

#include <string>
#include <vector>

#include <json.hpp>

#include "coxrig/bass_serre.hpp"
#include "coxrig/casework.hpp"
#include "coxrig/classification.hpp"
#include "coxrig/rigidity.hpp"
#include "coxrig/splitting.hpp"
#include "coxrig/words.hpp"

namespace coxrig {

using Json = nlohmann::ordered_json;

inline constexpr int kReportVersion = 1;

/// Orders as numbers when exactly representable in a double, else strings.
Json order_json(const Order& o);
Json subset_json(GenSubset s);

Json matrix_json(const CoxeterMatrix& m);
Json classification_json(const CoxeterMatrix& m, const Classification& c);
Json moussong_json(const MoussongResult& r);
Json splitting_json(const CoxeterMatrix& m, const SplitTree& t);
Json vc_type_json(const VCType& v);
Json edge_verdict_json(const EdgeVerdict& v);
Json rigidity_json(const RigidityReport& r);
Json checklist_json(const Checklist& c);

struct AnalysisOptions {
  std::size_t order_bound = kDefaultOrderBound;
};

/// Classification, splitting, virtually-cyclic type, finite subgroups and
/// the rigidity report together.
Json analysis_json(const CoxeterMatrix& m, const AnalysisOptions& opt = {});

/// Ball and cylinders of the Bass-Serre tree of the Stallings splitting.
/// Throws UnsupportedType when some vertex group is infinite.
Json ball_json(const CoxeterMatrix& m, std::size_t radius, std::size_t order_bound = kDefaultOrderBound);

/// Reduction, length and deletion pair of a word; a budget overrun is the
/// status "budget-exhausted".
Json reduce_json(const CoxeterMatrix& m, const Word& w, std::size_t budget);

/// Violations of the schema for j["kind"]; empty when j conforms.
std::vector<std::string> schema_errors(const Json& j);

/// Indented plain-text rendering.
std::string render_text(const Json& j);

}  // namespace coxrig
