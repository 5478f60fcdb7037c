#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>

#include "heightbound/report.hpp"

namespace py = pybind11;
using namespace hb;

namespace {

std::string dump(const Json& j) { return j.dump(); }

CurveSpec curve_from(const std::string& a, const std::string& b, const std::string& gx, const std::string& gy) {
    return curve_spec_from_json(Json{{"a", a}, {"b", b}, {"generator", {gx, gy}}, {"rank", 1}, {"torsion_order", 1}});
}

std::string canonical_height_json(const std::string& a, const std::string& b, const std::string& x,
                                  const std::string& y, const std::string& tol) {
    EllipticCurve e = EllipticCurve::validate(parse_rational(a), parse_rational(b));
    ECPoint p(parse_rational(x), parse_rational(y));
    return dump(to_json(canonical_height(e, p, parse_rational(tol))));
}

std::string weierstrass_height_json(const std::string& a, const std::string& b, long precision) {
    EllipticCurve e = EllipticCurve::validate(parse_rational(a), parse_rational(b));
    return dump(to_json(weierstrass_height(e, Rounding::Upper, precision)));
}

std::string eval_json(const std::string& expr, const std::string& direction, long precision) {
    return dump(to_json(eval_const(parse_const_expr(expr), parse_rounding(direction), precision)));
}

std::string family_audit_json(const std::string& family, long n, long precision) {
    return dump(to_json(family_final_bound(parse_family(family), n, precision)));
}

std::string search_json(const std::string& family, long n, const std::string& bound, const std::string& tol,
                        std::optional<std::string> preset, unsigned shards) {
    Family f = parse_family(family);
    Json fam = preset_family(to_string(f));
    CurveSpec spec = preset_curve(preset.value_or(fam.at("curve").get<std::string>()));
    return dump(
        to_json(search_rational_points(f, n, spec.gamma(), parse_rational(bound), parse_rational(tol), shards), false));
}

std::string census_json(const std::string& ring, int N, int r, std::int64_t max_degree, long torsion,
                        unsigned shards) {
    return dump(to_json(census(parse_ring(ring), N, r, max_degree, torsion, kDefaultEnumerationCeiling, shards)));
}

std::string exponents_json(const std::string& theorem, std::optional<long> N, std::optional<long> r,
                           std::optional<long> t, std::optional<long> dim) {
    return dump(to_json(exponents(theorem, ExponentParams{N, r, t, dim})));
}

}  // namespace

PYBIND11_MODULE(_heightbound, m) {
    m.doc() = "Effective height bounds on products of elliptic curves";

    auto error = py::register_exception<Error>(m, "Error", PyExc_ValueError);
    py::register_exception<ParseError>(m, "ParseError", error.ptr());
    py::register_exception<DomainError>(m, "DomainError", error.ptr());
    py::register_exception<IndeterminateError>(m, "IndeterminateError", error.ptr());
    py::register_exception<ResourceGuardError>(m, "ResourceGuardError", error.ptr());

    m.attr("SCHEMA_VERSION") = kSchemaVersion;
    m.attr("DEFAULT_PRECISION") = kDefaultPrecision;

    m.def("normalize_rational", [](const std::string& s) { return format_rational(parse_rational(s)); },
          py::arg("text"));
    m.def("preset_names", &preset_names);
    m.def("preset_json", [](const std::string& name) { return dump(preset_json(name)); }, py::arg("name"));
    m.def("curve_json", [](const std::string& a, const std::string& b, const std::string& gx, const std::string& gy) {
        return dump(curve_spec_to_json(curve_from(a, b, gx, gy)));
    }, py::arg("a"), py::arg("b"), py::arg("gx"), py::arg("gy"));
    m.def("canonical_height_json", &canonical_height_json, py::arg("a"), py::arg("b"), py::arg("x"), py::arg("y"),
          py::arg("tol") = "1/10000000000");
    m.def("weierstrass_height_json", &weierstrass_height_json, py::arg("a"), py::arg("b"),
          py::arg("precision") = kDefaultPrecision);
    m.def("eval_json", &eval_json, py::arg("expr"), py::arg("direction") = "upper",
          py::arg("precision") = kDefaultPrecision);
    m.def("family_audit_json", &family_audit_json, py::arg("family"), py::arg("n"),
          py::arg("precision") = kDefaultPrecision);
    m.def("search_json", &search_json, py::arg("family"), py::arg("n"), py::arg("bound"),
          py::arg("tol") = "1/10000000000", py::arg("preset") = std::nullopt, py::arg("shards") = 1u);
    m.def("census_json", &census_json, py::arg("ring"), py::arg("N"), py::arg("r"), py::arg("max_degree"),
          py::arg("torsion") = 1, py::arg("shards") = 1u);
    m.def("exponent_theorems", &exponent_theorems);
    m.def("exponents_json", &exponents_json, py::arg("theorem"), py::arg("N") = std::nullopt,
          py::arg("r") = std::nullopt, py::arg("t") = std::nullopt, py::arg("dim") = std::nullopt);
}
