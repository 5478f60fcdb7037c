#include "heightbound/search.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <thread>

#include "heightbound/errors.hpp"

namespace hb {

namespace {

constexpr long kMaxMultiple = 100000;

// Splits [lo, hi] into at most `parts` contiguous ranges and runs fn on each
// in its own thread.
template <typename Fn>
void parallel_ranges(long lo, long hi, unsigned parts, Fn fn) {
    long total = hi - lo + 1;
    if (total <= 0) return;
    parts = std::max(1u, std::min<unsigned>(parts, static_cast<unsigned>(std::min<long>(total, 1024))));
    std::vector<std::thread> threads;
    std::vector<std::exception_ptr> errors(parts);
    long start = lo;
    for (unsigned i = 0; i < parts; ++i) {
        long len = total / parts + (static_cast<long>(i) < total % parts ? 1 : 0);
        long a = start, b = start + len - 1;
        start += len;
        threads.emplace_back([&, i, a, b] {
            try {
                fn(i, a, b);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        });
    }
    for (auto& t : threads) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

}  // namespace

GammaSpec GammaSpec::validate(const EllipticCurve& curve, const ECPoint& generator, std::vector<ECPoint> torsion_points) {
    curve.require_on_curve(generator);
    if (torsion_order(curve, generator)) throw DomainError("generator " + generator.to_string() + " is a torsion point");
    std::vector<ECPoint> torsion;
    torsion.push_back(ECPoint::infinity());
    for (auto& t : torsion_points) {
        curve.require_on_curve(t);
        if (!torsion_order(curve, t)) throw DomainError("listed torsion point " + t.to_string() + " is not torsion");
        if (std::find(torsion.begin(), torsion.end(), t) == torsion.end()) torsion.push_back(std::move(t));
    }
    for (const auto& s : torsion)
        for (const auto& t : torsion) {
            ECPoint u = curve.add(s, t);
            if (std::find(torsion.begin(), torsion.end(), u) == torsion.end())
                throw DomainError("torsion list is not closed under addition: " + s.to_string() + " + " +
                                  t.to_string() + " = " + u.to_string() + " is missing");
        }
    return GammaSpec(curve, generator, std::move(torsion));
}

long multiple_bound(const CanonicalHeight& generator_height, const Rational& bound, const Rational& tol) {
    Rational lower = generator_height.value.value().to_rational() - generator_height.tolerance;
    if (lower <= 0) throw DomainError("generator height is not separated from zero; the generator looks torsion");
    Rational q = (bound + tol) / lower;
    Integer fl = q.get_num() / q.get_den();
    Integer k;
    mpz_sqrt(k.get_mpz_t(), fl.get_mpz_t());
    if (Rational(k * k) < q) k += 1;
    if (k > kMaxMultiple)
        throw ResourceGuardError("height bound admits multiples up to " + k.get_str() + ", above the limit of " +
                                 std::to_string(kMaxMultiple));
    return k.get_si();
}

std::vector<LatticePoint> enumerate_rank1(const GammaSpec& gamma, const Rational& bound, const Rational& tol,
                                          unsigned shards) {
    if (bound < 0) throw DomainError("height bound must satisfy B >= 0");
    if (tol <= 0) throw DomainError("tolerance must be positive");
    const EllipticCurve& e = gamma.curve();
    CanonicalHeight hg = canonical_height(e, gamma.generator(), tol);
    if (hg.value.value().to_rational() <= tol)
        throw DomainError("generator height " + hg.value.to_decimal(12) + " is within tolerance of zero");
    long amax = multiple_bound(hg, bound, tol);
    const auto& torsion = gamma.torsion_points();
    std::vector<std::vector<LatticePoint>> parts(std::max(1u, shards));
    Rational limit = bound + tol;
    parallel_ranges(-amax, amax, shards, [&](unsigned idx, long lo, long hi) {
        auto& out = parts[idx];
        ECPoint base = e.scalar_mul(lo, gamma.generator());
        for (long a = lo; a <= hi; ++a) {
            for (size_t ti = 0; ti < torsion.size(); ++ti) {
                ECPoint p = e.add(base, torsion[ti]);
                CanonicalHeight h = canonical_height(e, p, tol);
                if (h.value.value().to_rational() <= limit) out.push_back({a, ti, std::move(p), std::move(h)});
            }
            base = e.add(base, gamma.generator());
        }
    });
    std::vector<LatticePoint> all;
    for (auto& p : parts) std::move(p.begin(), p.end(), std::back_inserter(all));
    return all;
}

bool family_membership(const ECPoint& p1, const ECPoint& p2, Family family, long n) {
    if (n < 1) throw DomainError("family parameter must satisfy n >= 1");
    if (p1.is_infinity() || p2.is_infinity()) return false;
    Rational lhs = pow_rational(p1.x(), n);
    if (family == Family::Second) lhs += 1;
    return lhs == p2.y();
}

EllipticCurve family_curve(Family family) {
    return family == Family::First ? EllipticCurve::validate(1, -1) : EllipticCurve::validate(-1, -2);
}

SearchReport search_rational_points(Family family, long n, const GammaSpec& gamma, const Rational& bound,
                                    const Rational& tol, unsigned shards) {
    if (n < 1) throw DomainError("family parameter must satisfy n >= 1");
    if (!(gamma.curve() == family_curve(family)))
        throw DomainError("family " + to_string(family) + " lives on " + family_curve(family).to_string() +
                          ", not on " + gamma.curve().to_string());
    shards = std::max(1u, shards);
    auto start = std::chrono::steady_clock::now();
    std::vector<LatticePoint> lattice = enumerate_rank1(gamma, bound, tol, shards);

    // Second factors indexed by y2; membership is still checked pair by pair.
    std::multimap<Rational, size_t> by_y;
    for (size_t j = 0; j < lattice.size(); ++j)
        if (!lattice[j].point.is_infinity()) by_y.emplace(lattice[j].point.y(), j);

    std::vector<std::vector<FoundPoint>> parts(shards);
    parallel_ranges(0, static_cast<long>(lattice.size()) - 1, shards, [&](unsigned idx, long lo, long hi) {
        for (long i = lo; i <= hi; ++i) {
            const LatticePoint& l1 = lattice[static_cast<size_t>(i)];
            if (l1.point.is_infinity()) continue;
            Rational target = pow_rational(l1.point.x(), n);
            if (family == Family::Second) target += 1;
            auto [first, last] = by_y.equal_range(target);
            std::vector<size_t> hits;
            for (auto it = first; it != last; ++it) hits.push_back(it->second);
            std::sort(hits.begin(), hits.end());
            for (size_t j : hits) {
                const LatticePoint& l2 = lattice[j];
                if (!family_membership(l1.point, l2.point, family, n)) continue;
                parts[idx].push_back({l1.point, l2.point, l1.multiple, l2.multiple, l1.torsion_index,
                                      l2.torsion_index, l1.height, l2.height});
            }
        }
    });

    CanonicalHeight hg = canonical_height(gamma.curve(), gamma.generator(), tol);
    SearchReport r{family,
                   n,
                   bound,
                   tol,
                   gamma.curve(),
                   gamma.generator(),
                   hg,
                   multiple_bound(hg, bound, tol),
                   lattice.size(),
                   Integer(static_cast<unsigned long>(lattice.size())) * static_cast<unsigned long>(lattice.size()),
                   {},
                   {},
                   {}};
    for (auto& p : parts) std::move(p.begin(), p.end(), std::back_inserter(r.points));
    r.closure_candidates.emplace_back(ECPoint::infinity(), ECPoint::infinity());
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    r.metrics = {secs, secs > 0 ? r.candidates.get_d() / secs : 0.0, shards};
    return r;
}

}  // namespace hb
