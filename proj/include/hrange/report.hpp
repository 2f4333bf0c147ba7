#pragma once

#include <json.hpp>

#include "hrange/arcs.hpp"
#include "hrange/circle.hpp"
#include "hrange/lewis.hpp"
#include "hrange/range.hpp"
#include "hrange/verdict.hpp"
#include "hrange/zeros.hpp"

namespace hrange {

using Json = nlohmann::json;

// Complex numbers are written as {"re": x, "im": y}; angles in radians.
Json to_json(cplx z);
Json to_json(const ArcSet& a);
Json to_json(const Witness& w);
Json to_json(const Claim& c);
Json to_json(const SamplingInfo& s);
Json to_json(const TheoremVerdict& v);
Json to_json(const CircleMax& m);
Json to_json(const InequalityCheck& c);

/// Metadata and counts only; the points themselves go to CSV.
Json summary_json(const RangeSample& s);
Json to_json(const DirectionEstimate& e);
Json to_json(const ConeNormalization& n);
Json to_json(const PhiProfile& p);

Json to_json(const ZeroCurve& c);
Json to_json(const LocalStructure& l);
Json to_json(const TractReport& t);
Json to_json(const DependenceReport& d);

Json to_json(const LewisDisc& d);
Json to_json(const RescaledInvariants& inv);
Json to_json(const RescaledMap& m);
Json to_json(const RescaledSequence& s);

/// Indented dump with a trailing newline.
std::string dump(const Json& j);

}  // namespace hrange
