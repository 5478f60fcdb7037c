// Command-line front end: evaluates the bound formulas, audits the curve
// families, searches for rational points and runs the subgroup census.
// Every command writes one canonical JSON report.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>

#include "heightbound/bounds.hpp"
#include "heightbound/errors.hpp"
#include "heightbound/hurwitz.hpp"
#include "heightbound/io.hpp"
#include "heightbound/report.hpp"
#include "heightbound/search.hpp"
#include "heightbound/subgroups.hpp"

namespace {

using namespace hb;

enum ExitCode { kOk = 0, kInternal = 1, kParse = 2, kDomain = 3, kIndeterminate = 4, kResource = 5 };

long default_precision() {
    const char* env = std::getenv("HEIGHTBOUND_PRECISION");
    if (!env || !*env) return kDefaultPrecision;
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (*end != '\0') throw ParseError(std::string("HEIGHTBOUND_PRECISION is not an integer: '") + env + "'");
    return v;
}

void check_precision(long p) {
    if (p < kMinPrecision) throw DomainError("precision must be at least 53 bits, got " + std::to_string(p));
    if (p > 1 << 20) throw ResourceGuardError("precision above 2^20 bits is not supported");
}

struct Common {
    std::string out;
    long precision = 0;
};

void write_output(const Common& c, const std::string& text) {
    if (c.out.empty() || c.out == "-") {
        std::cout << text;
        return;
    }
    std::ofstream f(c.out, std::ios::binary);
    if (!f) throw ParseError("cannot write '" + c.out + "'");
    f << text;
}

// h_W from an explicit expression, a curve file or a preset (in that order).
struct HwSource {
    std::string expr, curve_file, preset;

    std::pair<ConstExpr, std::string> resolve() const {
        int given = !expr.empty() + !curve_file.empty() + !preset.empty();
        if (given > 1) throw ParseError("give at most one of --hw, --curve, --preset");
        if (!curve_file.empty()) {
            CurveSpec s = curve_spec_from_json(read_json_file(curve_file));
            return {weierstrass_height_expr(s.curve), "curve " + s.curve.to_string()};
        }
        if (!preset.empty()) {
            CurveSpec s = preset_curve(preset);
            return {weierstrass_height_expr(s.curve), "preset " + preset};
        }
        std::string e = expr.empty() ? "0" : expr;
        return {parse_const_expr(e), e};
    }
};

void add_hw_options(CLI::App* sub, HwSource& hw) {
    sub->add_option("--hw", hw.expr, "height of the Weierstrass equation, e.g. 1/3log2 (default 0)");
    sub->add_option("--curve", hw.curve_file, "curve JSON file; h_W is computed from its equation");
    sub->add_option("--preset", hw.preset, "built-in curve (e1, e2); h_W is computed from its equation");
}

Json hw_json(const ConstExpr& hw, const std::string& source, long precision) {
    return {{"source", source}, {"expression", hw.to_string()}, {"value", to_json(eval_const(hw, Rounding::Upper, precision))}};
}

int run_constants(const Common& c, bool want_d, bool want_c, long N, const HwSource& hws) {
    if (want_d == want_c) throw ParseError("constants: give exactly one of --d and --c");
    auto [hw, source] = hws.resolve();
    Json body;
    body["hW"] = hw_json(hw, source, c.precision);
    body["precision_bits"] = c.precision;
    if (want_d) {
        DConstantExprs d = constants_D_expr(hw);
        body["set"] = "D";
        body["D1"] = to_json(eval_const(d.d1, Rounding::Upper, c.precision));
        body["D2"] = to_json(eval_const(d.d2, Rounding::Upper, c.precision));
        body["D3"] = to_json(eval_const(d.d3, Rounding::Upper, c.precision));
        body["D2_hw_coefficient"] = to_json(eval_const(d2_hw_coefficient(), Rounding::Upper, c.precision));
        body["D2_constant"] = to_json(eval_const(d2_constant(), Rounding::Upper, c.precision));
        body["D3_hw_coefficient"] = format_rational(d3_hw_coefficient());
        body["D3_constant"] = to_json(eval_const(d3_constant(), Rounding::Upper, c.precision));
    } else {
        if (N == 0) throw ParseError("constants --c needs --N");
        CConstantExprs e = constants_CN_expr(N, hw);
        body["set"] = "C";
        body["N"] = N;
        body["C1"] = to_json(eval_const(e.c1, Rounding::Upper, c.precision));
        body["C2"] = to_json(eval_const(e.c2, Rounding::Upper, c.precision));
        body["C3"] = to_json(eval_const(e.c3, Rounding::Upper, c.precision));
    }
    write_output(c, emit_report(body, "constants"));
    return kOk;
}

int run_bound(const Common& c, const std::string& theorem, const std::string& hc, const std::string& degc, long N,
              const HwSource& hws) {
    if (hc.empty() || degc.empty()) throw ParseError("bound: --hc and --degc are required");
    auto [hw, source] = hws.resolve();
    long inner = c.precision + 64;
    BoundedReal hc_up = eval_const(parse_const_expr(hc), Rounding::Upper, inner);
    BoundedReal hw_up = eval_const(hw, Rounding::Upper, inner);
    Integer deg;
    try {
        deg = Integer(degc);
    } catch (const std::invalid_argument&) {
        throw ParseError("--degc must be an integer, got '" + degc + "'");
    }
    BoundReport r = [&] {
        if (theorem == "e2") return bound_transverse_E2(hc_up, deg, hw_up, c.precision);
        if (theorem == "en") {
            if (N == 0) throw ParseError("bound --theorem en needs --N");
            return bound_weaktransverse_EN(N, hc_up, deg, hw_up, c.precision);
        }
        throw ParseError("unknown --theorem '" + theorem + "' (expected e2 or en)");
    }();
    Json body = to_json(r);
    body["hW"] = hw_json(hw, source, c.precision);
    body["precision_bits"] = c.precision;
    write_output(c, emit_report(body, "bound"));
    return kOk;
}

int run_family_audit(const Common& c, const std::string& family_name, long n, const std::string& profile_file) {
    Family family = parse_family(family_name);
    if (n < 1) throw DomainError("--n must satisfy n >= 1");
    Json body;
    body["family"] = preset_family(to_string(family));
    body["n"] = n;
    body["degree_upper"] = family_degree_upper(family, n).get_str();
    std::optional<ProfileTemplate> profile;
    if (!profile_file.empty()) profile = profile_from_json(read_json_file(profile_file));
    else if (family == Family::Second) profile = preset_profile("cn");
    if (profile) {
        Integer deg = profile->degree.at(n);
        RamificationProfile concrete = profile->instantiate(n);
        CheckedProfile checked = validate_profile(deg, concrete);
        Json branches = Json::array();
        for (const auto& b : checked.branches) branches.push_back({{"label", b.label}, {"ramification", b.ramification.get_str()}});
        body["genus"] = {{"cover_degree", deg.get_str()},
                         {"base_genus", profile->base_genus.get_str()},
                         {"branches", branches},
                         {"total_ramification", checked.total_ramification.get_str()},
                         {"genus", hurwitz_genus(deg, profile->base_genus, concrete).get_str()}};
    } else {
        body["genus"] = nullptr;
        body["notes"] = {"no ramification profile is known for this family"};
    }
    if (family == Family::Second) body["invariants"] = to_json(family_invariants(family, n, c.precision), c.precision);
    FamilyBoundReport fb = family_final_bound(family, n, c.precision);
    body["final_bound"] = to_json(fb);
    write_output(c, emit_report(body, "family-audit"));
    return fb.verdict == FamilyVerdict::Indeterminate ? kIndeterminate : kOk;
}

int run_search(const Common& c, const std::string& family_name, long n, const std::string& curve_file,
               const std::string& preset, const std::string& bound, const std::string& tol, unsigned shards,
               bool metrics) {
    Family family = parse_family(family_name);
    if (!curve_file.empty() && !preset.empty()) throw ParseError("give at most one of --curve and --preset");
    CurveSpec spec = !curve_file.empty() ? curve_spec_from_json(read_json_file(curve_file))
                     : !preset.empty()   ? preset_curve(preset)
                                         : preset_curve(preset_family(to_string(family))["curve"].get<std::string>());
    if (bound.empty()) throw ParseError("search: --height-bound is required");
    if (shards < 1) throw DomainError("--shards must be >= 1");
    SearchReport r = search_rational_points(family, n, spec.gamma(), parse_rational(bound), parse_rational(tol), shards);
    write_output(c, emit_report(to_json(r, metrics), "search"));
    return kOk;
}

int run_census(const Common& c, const std::string& ring, int N, int r, long dmax, long torsion, unsigned shards,
               std::uint64_t ceiling, bool list) {
    if (shards < 1) throw DomainError("--shards must be >= 1");
    EndRing er = parse_ring(ring);
    CensusReport rep = census(er, N, r, dmax, torsion, ceiling, shards);
    Json body = to_json(rep);
    if (list) {
        Json mats = Json::array();
        for (const auto& m : enumerate_matrices(er, N, r, dmax, ceiling, shards))
            mats.push_back({{"rows", to_json(m)}, {"degree", degree_estimate(m)}});
        body["matrices"] = mats;
    }
    write_output(c, emit_report(body, "census"));
    return kOk;
}

int run_exponents(const Common& c, const std::string& theorem, const ExponentParams& p) {
    Json params = Json::object();
    if (p.N) params["N"] = *p.N;
    if (p.r) params["r"] = *p.r;
    if (p.t) params["t"] = *p.t;
    if (p.dim) params["dim"] = *p.dim;
    Json body = {{"theorem", theorem}, {"params", params}, {"entries", to_json(exponents(theorem, p))}};
    write_output(c, emit_report(body, "exponents"));
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Explicit height bounds, point search and subgroup census for curves in powers of elliptic curves"};
    app.require_subcommand(1);
    Common common;
    long precision_flag = 0;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--out", common.out, "write the JSON report here (default: stdout)");
        sub->add_option("--precision", precision_flag, "working precision in bits (default 128 or $HEIGHTBOUND_PRECISION)");
    };

    auto* constants = app.add_subcommand("constants", "evaluate the constants D1, D2, D3 or C1(N), C2, C3");
    bool want_d = false, want_c = false;
    long constants_N = 0;
    HwSource constants_hw;
    constants->add_flag("--d", want_d, "constants of the E^2 bound");
    constants->add_flag("--c", want_c, "constants of the E^N bound");
    constants->add_option("--N", constants_N, "ambient power for --c");
    add_hw_options(constants, constants_hw);
    add_common(constants);

    auto* bound = app.add_subcommand("bound", "evaluate the height bound for a curve of given height and degree");
    std::string theorem = "e2", hc, degc;
    long bound_N = 0;
    HwSource bound_hw;
    bound->add_option("--theorem", theorem, "e2 (transverse curve in E^2) or en (weak-transverse in E^N)");
    bound->add_option("--hc", hc, "upper bound for the normalised height h(C), e.g. 18*log18+27log24");
    bound->add_option("--degc", degc, "upper bound for deg C");
    bound->add_option("--N", bound_N, "ambient power for --theorem en");
    add_hw_options(bound, bound_hw);
    add_common(bound);

    auto* audit = app.add_subcommand("family-audit", "degree, genus, height and final bound for C_n");
    std::string audit_family;
    long audit_n = 0;
    std::string audit_profile;
    audit->add_option("--family", audit_family, "f1 (x1^n = y2) or f2 (x1^n + 1 = y2)")->required();
    audit->add_option("--n", audit_n, "family parameter n >= 1")->required();
    audit->add_option("--profile", audit_profile, "ramification profile JSON overriding the built-in one");
    add_common(audit);

    auto* search = app.add_subcommand("search", "enumerate rational points of C_n up to a canonical height bound");
    std::string search_family, search_curve, search_preset, search_bound, search_tol = "1e-10";
    long search_n = 0;
    unsigned search_shards = 1;
    bool search_metrics = false;
    search->add_option("--family", search_family, "f1 or f2")->required();
    search->add_option("--n", search_n, "family parameter n >= 1")->required();
    search->add_option("--curve", search_curve, "curve JSON with the generator of E(Q)");
    search->add_option("--preset", search_preset, "built-in curve e1 or e2 (default: the family's curve)");
    search->add_option("--height-bound", search_bound, "canonical height bound B, a rational such as 25")->required();
    search->add_option("--tol", search_tol, "tolerance for canonical heights (default 1e-10)");
    search->add_option("--shards", search_shards, "number of worker threads (default 1)");
    search->add_flag("--metrics", search_metrics, "include wall-clock metrics (makes the report non-reproducible)");
    add_common(search);

    auto* cens = app.add_subcommand("census", "count subgroup matrices by degree and torsion points by order");
    std::string census_ring = "z";
    int census_N = 0, census_r = 0;
    long census_dmax = 0, census_torsion = 1;
    unsigned census_shards = 1;
    std::uint64_t census_ceiling = kDefaultEnumerationCeiling;
    bool census_list = false;
    cens->add_option("--ring", census_ring, "z, gauss or eisenstein");
    cens->add_option("--N", census_N, "number of columns")->required();
    cens->add_option("--r", census_r, "number of rows")->required();
    cens->add_option("--max-degree", census_dmax, "largest degree estimate counted")->required();
    cens->add_option("--torsion", census_torsion, "largest torsion order counted (default 1)");
    cens->add_option("--shards", census_shards, "number of worker threads (default 1)");
    cens->add_option("--ceiling", census_ceiling, "refuse enumerations predicted to inspect more candidates");
    cens->add_flag("--list", census_list, "include the matrices themselves");
    add_common(cens);

    auto* expo = app.add_subcommand("exponents", "exact exponents of the non-effective bounds");
    std::string expo_theorem;
    long eN = -1, er = -1, et = -1, edim = -1;
    expo->add_option("--theorem", expo_theorem, "one of: " + [] {
        std::string s;
        for (const auto& id : exponent_theorems()) s += (s.empty() ? "" : ", ") + id;
        return s;
    }())->required();
    expo->add_option("--N", eN, "ambient power");
    expo->add_option("--r", er, "codimension of the subgroups");
    expo->add_option("--t", et, "rank of the group of coordinates");
    expo->add_option("--dim", edim, "dimension of V");
    add_common(expo);

    auto* preset = app.add_subcommand("preset", "print a built-in preset (e1, e2, f1, f2, cn)");
    std::string preset_name;
    preset->add_option("name", preset_name, "preset name")->required();
    add_common(preset);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kParse;
    }

    try {
        common.precision = precision_flag ? precision_flag : default_precision();
        check_precision(common.precision);
        if (*constants) return run_constants(common, want_d, want_c, constants_N, constants_hw);
        if (*bound) return run_bound(common, theorem, hc, degc, bound_N, bound_hw);
        if (*audit) return run_family_audit(common, audit_family, audit_n, audit_profile);
        if (*search)
            return run_search(common, search_family, search_n, search_curve, search_preset, search_bound, search_tol,
                              search_shards, search_metrics);
        if (*cens)
            return run_census(common, census_ring, census_N, census_r, census_dmax, census_torsion, census_shards,
                              census_ceiling, census_list);
        if (*expo) {
            auto opt = [](long v) { return v < 0 ? std::optional<long>() : std::optional<long>(v); };
            return run_exponents(common, expo_theorem, {opt(eN), opt(er), opt(et), opt(edim)});
        }
        if (*preset) {
            write_output(common, preset_json(preset_name).dump(2) + "\n");
            return kOk;
        }
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kParse;
    } catch (const IndeterminateError& e) {
        std::cerr << "indeterminate: " << e.what() << "\n";
        return kIndeterminate;
    } catch (const ResourceGuardError& e) {
        std::cerr << "resource guard: " << e.what() << "\n";
        return kResource;
    } catch (const DomainError& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return kDomain;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kInternal;
    }
    return kInternal;
}
