#pragma once

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

#include "heightbound/bounds.hpp"
#include "heightbound/elliptic.hpp"
#include "heightbound/hurwitz.hpp"
#include "heightbound/search.hpp"

namespace hb {

using Json = nlohmann::json;

// Curve file: {"a": "p/q", "b": "p/q", "generator": ["x", "y"], "rank": 1,
// "torsion_order": 1, "torsion_points": [["x", "y"], ...]}.
struct CurveSpec {
    EllipticCurve curve;
    ECPoint generator;
    int rank = 1;
    int torsion_order = 1;
    std::vector<ECPoint> torsion_points;  // without O

    GammaSpec gamma() const;
};

// ParseError for malformed JSON or fields, DomainError for a singular curve,
// a point off the curve or an inconsistent torsion description.
CurveSpec curve_spec_from_json(const Json& j);
Json curve_spec_to_json(const CurveSpec& spec);

// Profile file: {"degree": "6n", "base_genus": 0, "branches": [{"label": "...",
// "fibers": [[index, count], ...]}]}; indices and counts are integers or
// strings linear in n.
ProfileTemplate profile_from_json(const Json& j);
Json profile_to_json(const ProfileTemplate& p);

// Built-in presets: curves "e1", "e2"; families "f1", "f2"; profile "cn".
CurveSpec preset_curve(const std::string& name);
Json preset_family(const std::string& name);
ProfileTemplate preset_profile(const std::string& name);
std::vector<std::string> preset_names();
Json preset_json(const std::string& name);

// Reads and parses a JSON file; ParseError when unreadable or malformed.
Json read_json_file(const std::string& path);

}  // namespace hb
