#include "heightbound/io.hpp"

#include <fstream>
#include <sstream>

#include "heightbound/errors.hpp"

namespace hb {

namespace {

Rational rational_field(const Json& j, const std::string& where) {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(Integer(j.dump()));
    throw ParseError(where + ": expected a rational as a string such as \"-1/3\"");
}

const Json& require(const Json& j, const std::string& key, const std::string& where) {
    if (!j.is_object()) throw ParseError(where + ": expected a JSON object");
    auto it = j.find(key);
    if (it == j.end()) throw ParseError(where + ": missing field \"" + key + "\"");
    return *it;
}

int int_field(const Json& j, const std::string& where) {
    if (!j.is_number_integer()) throw ParseError(where + ": expected an integer");
    return j.get<int>();
}

ECPoint point_field(const Json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 2) throw ParseError(where + ": expected a point [\"x\", \"y\"]");
    return {rational_field(j[0], where + ".x"), rational_field(j[1], where + ".y")};
}

LinearInN linear_field(const Json& j, const std::string& where) {
    if (j.is_number_integer()) return {Integer(j.dump()), 0};
    if (j.is_string()) return parse_linear_in_n(j.get<std::string>());
    throw ParseError(where + ": expected an integer or an expression such as \"6n-6\"");
}

Json linear_to_json(const LinearInN& v) {
    if (v.slope == 0 && v.constant.fits_slong_p()) return v.constant.get_si();
    return v.to_string();
}

const char* kPresetE1 = R"({"a": "1", "b": "-1", "generator": ["1", "1"], "rank": 1, "torsion_order": 1})";
const char* kPresetE2 = R"({"a": "-1", "b": "-2", "generator": ["2", "2"], "rank": 1, "torsion_order": 1})";
const char* kPresetF1 = R"({"family": "f1", "curve": "e1", "equation": "x1^n = y2"})";
const char* kPresetF2 = R"({"family": "f2", "curve": "e2", "equation": "x1^n + 1 = y2", "profile": "cn"})";

}  // namespace

GammaSpec CurveSpec::gamma() const { return GammaSpec::validate(curve, generator, torsion_points); }

CurveSpec curve_spec_from_json(const Json& j) {
    const std::string where = "curve";
    Rational a = rational_field(require(j, "a", where), "curve.a");
    Rational b = rational_field(require(j, "b", where), "curve.b");
    EllipticCurve e = EllipticCurve::validate(a, b);
    ECPoint g = point_field(require(j, "generator", where), "curve.generator");
    e.require_on_curve(g);
    int rank = j.contains("rank") ? int_field(j["rank"], "curve.rank") : 1;
    if (rank != 1) throw DomainError("curve.rank: only rank-one groups are supported, got " + std::to_string(rank));
    int torsion = j.contains("torsion_order") ? int_field(j["torsion_order"], "curve.torsion_order") : 1;
    if (torsion < 1) throw DomainError("curve.torsion_order must be >= 1");
    std::vector<ECPoint> tors;
    if (j.contains("torsion_points")) {
        const Json& list = j["torsion_points"];
        if (!list.is_array()) throw ParseError("curve.torsion_points: expected an array of points");
        for (size_t i = 0; i < list.size(); ++i) {
            if (list[i].is_string() && list[i].get<std::string>() == "O") continue;
            tors.push_back(point_field(list[i], "curve.torsion_points[" + std::to_string(i) + "]"));
        }
    }
    if (static_cast<int>(tors.size()) + 1 != torsion)
        throw DomainError("curve.torsion_order is " + std::to_string(torsion) + " but " +
                          std::to_string(tors.size() + 1) + " torsion points (including O) are listed");
    CurveSpec spec{e, g, rank, torsion, tors};
    spec.gamma();  // validates generator and torsion closure
    return spec;
}

Json curve_spec_to_json(const CurveSpec& spec) {
    Json j;
    j["a"] = format_rational(spec.curve.a());
    j["b"] = format_rational(spec.curve.b());
    j["generator"] = {format_rational(spec.generator.x()), format_rational(spec.generator.y())};
    j["rank"] = spec.rank;
    j["torsion_order"] = spec.torsion_order;
    if (!spec.torsion_points.empty()) {
        Json list = Json::array();
        for (const auto& t : spec.torsion_points) list.push_back({format_rational(t.x()), format_rational(t.y())});
        j["torsion_points"] = list;
    }
    return j;
}

ProfileTemplate profile_from_json(const Json& j) {
    ProfileTemplate t;
    t.degree = linear_field(require(j, "degree", "profile"), "profile.degree");
    if (j.contains("base_genus")) t.base_genus = int_field(j["base_genus"], "profile.base_genus");
    const Json& branches = require(j, "branches", "profile");
    if (!branches.is_array()) throw ParseError("profile.branches: expected an array");
    for (size_t i = 0; i < branches.size(); ++i) {
        std::string where = "profile.branches[" + std::to_string(i) + "]";
        const Json& label = require(branches[i], "label", where);
        if (!label.is_string()) throw ParseError(where + ".label: expected a string");
        BranchTemplate b{label.get<std::string>(), {}};
        const Json& fibers = require(branches[i], "fibers", where);
        if (!fibers.is_array()) throw ParseError(where + ".fibers: expected an array of [index, count] pairs");
        for (size_t k = 0; k < fibers.size(); ++k) {
            std::string fw = where + ".fibers[" + std::to_string(k) + "]";
            if (!fibers[k].is_array() || fibers[k].size() != 2) throw ParseError(fw + ": expected [index, count]");
            b.fibers.push_back({linear_field(fibers[k][0], fw), linear_field(fibers[k][1], fw)});
        }
        t.branches.push_back(std::move(b));
    }
    return t;
}

Json profile_to_json(const ProfileTemplate& p) {
    Json j;
    j["degree"] = linear_to_json(p.degree);
    j["base_genus"] = p.base_genus.get_si();
    Json branches = Json::array();
    for (const auto& b : p.branches) {
        Json fibers = Json::array();
        for (const auto& f : b.fibers) fibers.push_back({linear_to_json(f.index), linear_to_json(f.count)});
        branches.push_back({{"label", b.label}, {"fibers", fibers}});
    }
    j["branches"] = branches;
    return j;
}

CurveSpec preset_curve(const std::string& name) {
    if (name == "e1") return curve_spec_from_json(Json::parse(kPresetE1));
    if (name == "e2") return curve_spec_from_json(Json::parse(kPresetE2));
    throw ParseError("unknown curve preset '" + name + "' (expected e1 or e2)");
}

Json preset_family(const std::string& name) {
    if (name == "f1") return Json::parse(kPresetF1);
    if (name == "f2") return Json::parse(kPresetF2);
    throw ParseError("unknown family preset '" + name + "' (expected f1 or f2)");
}

ProfileTemplate preset_profile(const std::string& name) {
    if (name == "cn") return family_profile_template();
    throw ParseError("unknown profile preset '" + name + "' (expected cn)");
}

std::vector<std::string> preset_names() { return {"cn", "e1", "e2", "f1", "f2"}; }

Json preset_json(const std::string& name) {
    if (name == "e1" || name == "e2") return curve_spec_to_json(preset_curve(name));
    if (name == "f1" || name == "f2") return preset_family(name);
    if (name == "cn") return profile_to_json(preset_profile(name));
    throw ParseError("unknown preset '" + name + "'");
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot read '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    try {
        return Json::parse(buf.str());
    } catch (const Json::exception& e) {
        throw ParseError("'" + path + "' is not valid JSON: " + e.what());
    }
}

}  // namespace hb
