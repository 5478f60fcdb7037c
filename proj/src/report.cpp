#include "heightbound/report.hpp"

#include "heightbound/errors.hpp"

namespace hb {

namespace {

// q rounded to `places` decimals, ties away from zero.
std::string fixed_decimal(const Rational& q, int places) {
    Integer scale = pow_integer(Integer(10), static_cast<unsigned long>(places));
    Rational scaled = q * Rational(scale);
    Integer num = abs(scaled.get_num()), den = scaled.get_den();
    Integer rounded = (2 * num + den) / (2 * den);
    std::string digits = rounded.get_str();
    if (static_cast<int>(digits.size()) <= places) digits.insert(0, static_cast<size_t>(places) + 1 - digits.size(), '0');
    std::string out = digits.substr(0, digits.size() - static_cast<size_t>(places));
    if (places > 0) out += "." + digits.substr(digits.size() - static_cast<size_t>(places));
    bool zero = rounded == 0;
    return (q < 0 && !zero ? "-" : "") + out;
}

Json integer_json(const Integer& z) { return z.get_str(); }

}  // namespace

Json to_json(const BoundedReal& v) {
    return {{"value_decimal", v.to_decimal()},
            {"direction", to_string(v.direction())},
            {"precision_bits", v.precision()},
            {"approx", v.to_decimal(4)}};
}

Json to_json(const CanonicalHeight& h) {
    Integer inv = (h.tolerance.get_den() + h.tolerance.get_num() - 1) / h.tolerance.get_num();  // ceil(1/tol)
    int places = static_cast<int>(inv.get_str().size()) + 1;
    return {{"kind", "canonical"},
            {"value_decimal", fixed_decimal(h.value.value().to_rational(), places)},
            {"direction", to_string(h.value.direction())},
            {"precision_bits", h.precision},
            {"tolerance", format_rational(h.tolerance)},
            {"series_terms", h.doublings}};
}

Json to_json(const ECPoint& p) {
    if (p.is_infinity()) return "O";
    return {format_rational(p.x()), format_rational(p.y())};
}

ECPoint point_from_json(const Json& j, const EllipticCurve& e) {
    if (j.is_string() && j.get<std::string>() == "O") return ECPoint::infinity();
    if (!j.is_array() || j.size() != 2 || !j[0].is_string() || !j[1].is_string())
        throw ParseError("expected a point \"O\" or [\"x\", \"y\"]");
    ECPoint p(parse_rational(j[0].get<std::string>()), parse_rational(j[1].get<std::string>()));
    e.require_on_curve(p);
    return p;
}

Json to_json(const BoundReport& r) {
    Json inputs = Json::object(), inter = Json::object();
    for (const auto& [k, v] : r.inputs) inputs[k] = v;
    for (const auto& nv : r.intermediates) inter[nv.name] = to_json(nv.value);
    return {{"theorem", r.theorem}, {"inputs", inputs}, {"intermediates", inter}, {"bound", to_json(r.bound)},
            {"notes", r.notes}};
}

Json to_json(const FamilyInvariants& inv, long precision) {
    Json chain = Json::object();
    for (const auto& [name, expr] : inv.chain) chain[name] = to_json(eval_const(expr, Rounding::Upper, precision));
    return {{"family", to_string(inv.family)},
            {"n", inv.n},
            {"degree_upper", integer_json(inv.deg_upper)},
            {"mu_upper", to_json(inv.mu_upper)},
            {"h_upper", to_json(inv.h_upper)},
            {"chain", chain}};
}

Json to_json(const FamilyBoundReport& r) {
    Json j = {{"family", to_string(r.family)},
              {"n", r.n},
              {"closed_form",
               {{"coefficient", format_rational(r.closed_form_coefficient)},
                {"value", format_rational(r.closed_form_coefficient *
                                          Rational(pow_integer(Integer(r.n + 1), 3)))},
                {"bound", to_json(r.closed_form)}}},
              {"verdict", to_string(r.verdict)},
              {"precision_bits", r.precision}};
    if (r.composed) j["composed"] = to_json(*r.composed);
    if (r.composed_lower) j["composed_lower"] = to_json(*r.composed_lower);
    if (r.coefficient_upper) j["coefficient_upper"] = to_json(*r.coefficient_upper);
    if (r.coefficient_lower) j["coefficient_lower"] = to_json(*r.coefficient_lower);
    if (r.discrepancy) j["discrepancy"] = {{"flagged", true}, {"fails_audit", false}, {"detail", *r.discrepancy}};
    return j;
}

Json to_json(const SearchReport& r, bool include_metrics) {
    Json points = Json::array();
    for (const auto& p : r.points) {
        points.push_back({{"p1", to_json(p.p1)},
                          {"p2", to_json(p.p2)},
                          {"multiples", {p.a1, p.a2}},
                          {"torsion_indices", {p.t1, p.t2}},
                          {"heights", {to_json(p.h1), to_json(p.h2)}}});
    }
    Json closure = Json::array();
    for (const auto& [a, b] : r.closure_candidates) closure.push_back({to_json(a), to_json(b)});
    Json j = {{"family", to_string(r.family)},
              {"n", r.n},
              {"curve", {{"a", format_rational(r.curve.a())}, {"b", format_rational(r.curve.b())}}},
              {"generator", to_json(r.generator)},
              {"generator_height", to_json(r.generator_height)},
              {"height_bound", format_rational(r.height_bound)},
              {"tolerance", format_rational(r.tolerance)},
              {"max_multiple", r.max_multiple},
              {"lattice_points", r.lattice_points},
              {"candidates", integer_json(r.candidates)},
              {"points", points},
              {"closure_candidates", closure},
              {"scope", "exhaustive for pairs of group elements of canonical height at most height_bound; "
                        "no claim beyond that bound"}};
    if (include_metrics)
        j["metrics"] = {{"elapsed_seconds", r.metrics.elapsed_seconds},
                        {"candidates_per_second", r.metrics.candidates_per_second},
                        {"shards", r.metrics.shards}};
    return j;
}

Json to_json(const CensusReport& r) {
    Json by_degree = Json::array(), cumulative = Json::array(), torsion = Json::array();
    for (const auto& [d, c] : r.by_degree) by_degree.push_back({{"degree", d}, {"count", c}});
    for (const auto& [d, c] : r.cumulative) cumulative.push_back({{"degree", d}, {"count", c}});
    for (const auto& t : r.torsion)
        torsion.push_back({{"order", t.order}, {"dividing", integer_json(t.dividing)}, {"exact", integer_json(t.exact)}});
    return {{"ring", to_string(r.ring)},
            {"N", r.N},
            {"r", r.r},
            {"max_degree", r.max_degree},
            {"torsion_bound", r.torsion_bound},
            {"matrix_count", r.matrix_count},
            {"by_degree", by_degree},
            {"cumulative", cumulative},
            {"torsion", torsion},
            {"torsion_total", integer_json(r.torsion_total)},
            {"product_bound", integer_json(r.product_bound)},
            {"kappa", format_rational(r.kappa)}};
}

Json to_json(const std::vector<ExponentEntry>& entries) {
    Json out = Json::array();
    for (const auto& e : entries)
        out.push_back({{"bound", e.bound},
                       {"factor", e.factor},
                       {"exponent", format_rational(e.exponent)},
                       {"eta_coefficient", format_rational(e.eta_coefficient)}});
    return out;
}

Json to_json(const SubgroupMatrix& m) {
    Json rows = Json::array();
    for (int i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(to_string(m.ring(), m.at(i, j)));
        rows.push_back(row);
    }
    return rows;
}

std::string emit_report(Json body, const std::string& kind) {
    body["kind"] = kind;
    body["schema_version"] = kSchemaVersion;
    return body.dump(2) + "\n";
}

}  // namespace hb
