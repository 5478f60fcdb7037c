#pragma once

#include "heightbound/bounds.hpp"
#include "heightbound/heights.hpp"
#include "heightbound/io.hpp"
#include "heightbound/search.hpp"
#include "heightbound/subgroups.hpp"

namespace hb {

inline constexpr int kSchemaVersion = 1;

// {"value_decimal", "direction", "precision_bits", "approx"}; approx keeps 4
// significant digits rounded in the same direction.
Json to_json(const BoundedReal& v);
// Canonical heights carry their tolerance instead of a direction guarantee;
// value_decimal keeps the digits the tolerance justifies plus two.
Json to_json(const CanonicalHeight& h);
Json to_json(const ECPoint& p);  // "O" or ["x", "y"]
ECPoint point_from_json(const Json& j, const EllipticCurve& e);

Json to_json(const BoundReport& r);
Json to_json(const FamilyInvariants& inv, long precision);
Json to_json(const FamilyBoundReport& r);
Json to_json(const SearchReport& r, bool include_metrics);
Json to_json(const CensusReport& r);
Json to_json(const std::vector<ExponentEntry>& entries);
Json to_json(const SubgroupMatrix& m);

// Adds "kind" and "schema_version" and serialises with sorted keys, two-space
// indentation and a trailing newline.
std::string emit_report(Json body, const std::string& kind);

}  // namespace hb
