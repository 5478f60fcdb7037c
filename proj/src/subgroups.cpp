#include "heightbound/subgroups.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <thread>

#include "heightbound/errors.hpp"

namespace hb {

namespace {

using i64 = std::int64_t;

constexpr int kMaxColumns = 12;

i64 checked_add(i64 x, i64 y) {
    i64 out;
    if (__builtin_add_overflow(x, y, &out)) throw DomainError("ring arithmetic overflow");
    return out;
}
i64 checked_sub(i64 x, i64 y) {
    i64 out;
    if (__builtin_sub_overflow(x, y, &out)) throw DomainError("ring arithmetic overflow");
    return out;
}
i64 checked_mul(i64 x, i64 y) {
    i64 out;
    if (__builtin_mul_overflow(x, y, &out)) throw DomainError("ring arithmetic overflow");
    return out;
}

i64 floor_div(i64 x, i64 d) {  // d > 0
    i64 q = x / d;
    if ((x % d != 0) && (x < 0)) --q;
    return q;
}

RingElt conj(EndRing ring, const RingElt& x) {
    switch (ring) {
        case EndRing::Integers: return x;
        case EndRing::Gaussian: return {x.a, -x.b};
        case EndRing::Eisenstein: return {checked_sub(x.a, x.b), -x.b};  // conj(w) = w^2 = -1 - w
    }
    return x;
}

// x / p with each coordinate rounded by `round` (floor or nearest).
template <typename Round>
RingElt quotient(EndRing ring, const RingElt& x, const RingElt& p, Round round) {
    RingElt num = ring_mul(ring, x, conj(ring, p));
    i64 n = ring_norm(ring, p);
    return {round(num.a, n), round(num.b, n)};
}

RingElt floor_quotient(EndRing ring, const RingElt& x, const RingElt& p) {
    return quotient(ring, x, p, [](i64 u, i64 n) { return floor_div(u, n); });
}

RingElt nearest_quotient(EndRing ring, const RingElt& x, const RingElt& p) {
    return quotient(ring, x, p, [](i64 u, i64 n) { return floor_div(checked_add(checked_mul(2, u), n), 2 * n); });
}

RingElt exact_quotient(EndRing ring, const RingElt& x, const RingElt& p) {
    RingElt num = ring_mul(ring, x, conj(ring, p));
    i64 n = ring_norm(ring, p);
    if (num.a % n != 0 || num.b % n != 0) throw DomainError("inexact division in Bareiss elimination");
    return {num.a / n, num.b / n};
}

// Ring elements of norm <= bound, sorted.
std::vector<RingElt> elements_up_to_norm(EndRing ring, i64 bound) {
    std::vector<RingElt> out;
    if (bound < 0) return out;
    auto side = static_cast<i64>(std::sqrt(static_cast<long double>(bound) * (ring == EndRing::Eisenstein ? 2 : 1))) + 1;
    if (ring == EndRing::Integers) {
        for (i64 a = -side; a <= side; ++a)
            if (a * a <= bound) out.push_back({a, 0});
        return out;
    }
    for (i64 a = -side; a <= side; ++a)
        for (i64 b = -side; b <= side; ++b) {
            RingElt x{a, b};
            if (ring_norm(ring, x) <= bound) out.push_back(x);
        }
    return out;
}

// |R / pR|: |p| over Z, norm(p) over the quadratic rings.
i64 residue_count(EndRing ring, const RingElt& p) {
    return ring == EndRing::Integers ? std::abs(p.a) : ring_norm(ring, p);
}

std::vector<RingElt> residue_system(EndRing ring, const RingElt& p) {
    std::vector<RingElt> out;
    for (const RingElt& x : elements_up_to_norm(ring, checked_mul(4, ring_norm(ring, p))))
        if (canonical_residue(ring, x, p) == x) out.push_back(x);
    if (static_cast<i64>(out.size()) != residue_count(ring, p))
        throw DomainError("residue system of " + to_string(ring, p) + " has the wrong size");
    return out;
}

void combinations(int n, int k, std::vector<int>& current, int start, std::vector<std::vector<int>>& out) {
    if (static_cast<int>(current.size()) == k) {
        out.push_back(current);
        return;
    }
    for (int i = start; i < n; ++i) {
        current.push_back(i);
        combinations(n, k, current, i + 1, out);
        current.pop_back();
    }
}

std::vector<std::vector<int>> column_subsets(int n, int k) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    combinations(n, k, cur, 0, out);
    return out;
}

// Multiplies row i of m by c and subtracts it from row k, from column `from` on.
void row_axpy(SubgroupMatrix& m, int k, int i, const RingElt& c, int from) {
    for (int j = from; j < m.cols(); ++j)
        m.at(k, j) = ring_sub(m.ring(), m.at(k, j), ring_mul(m.ring(), c, m.at(i, j)));
}

}  // namespace

std::string to_string(EndRing ring) {
    switch (ring) {
        case EndRing::Integers: return "z";
        case EndRing::Gaussian: return "gauss";
        case EndRing::Eisenstein: return "eisenstein";
    }
    return "?";
}

EndRing parse_ring(const std::string& text) {
    if (text == "z" || text == "Z" || text == "integers") return EndRing::Integers;
    if (text == "gauss" || text == "gaussian" || text == "zi") return EndRing::Gaussian;
    if (text == "eisenstein" || text == "zw") return EndRing::Eisenstein;
    throw ParseError("unknown ring '" + text + "' (expected z, gauss or eisenstein)");
}

RingElt ring_add(EndRing, const RingElt& x, const RingElt& y) { return {checked_add(x.a, y.a), checked_add(x.b, y.b)}; }
RingElt ring_sub(EndRing, const RingElt& x, const RingElt& y) { return {checked_sub(x.a, y.a), checked_sub(x.b, y.b)}; }
RingElt ring_neg(const RingElt& x) { return {-x.a, -x.b}; }

RingElt ring_mul(EndRing ring, const RingElt& x, const RingElt& y) {
    i64 ac = checked_mul(x.a, y.a), bd = checked_mul(x.b, y.b);
    i64 cross = checked_add(checked_mul(x.a, y.b), checked_mul(x.b, y.a));
    switch (ring) {
        case EndRing::Integers: return {ac, 0};
        case EndRing::Gaussian: return {checked_sub(ac, bd), cross};
        case EndRing::Eisenstein: return {checked_sub(ac, bd), checked_sub(cross, bd)};  // w^2 = -1 - w
    }
    return {};
}

std::int64_t ring_norm(EndRing ring, const RingElt& x) {
    i64 aa = checked_mul(x.a, x.a), bb = checked_mul(x.b, x.b);
    switch (ring) {
        case EndRing::Integers: return aa;
        case EndRing::Gaussian: return checked_add(aa, bb);
        case EndRing::Eisenstein: return checked_add(checked_sub(aa, checked_mul(x.a, x.b)), bb);
    }
    return 0;
}

std::vector<RingElt> ring_units(EndRing ring) {
    switch (ring) {
        case EndRing::Integers: return {{1, 0}, {-1, 0}};
        case EndRing::Gaussian: return {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
        case EndRing::Eisenstein: return {{1, 0}, {0, 1}, {-1, -1}, {-1, 0}, {0, -1}, {1, 1}};
    }
    return {};
}

RingElt canonical_associate(EndRing ring, const RingElt& x) {
    if (x.is_zero()) throw DomainError("zero has no canonical associate");
    RingElt best = x;
    for (const RingElt& u : ring_units(ring)) {
        RingElt y = ring_mul(ring, u, x);
        if (best < y) best = y;
    }
    return best;
}

RingElt canonical_residue(EndRing ring, const RingElt& x, const RingElt& p) {
    if (p.is_zero()) throw DomainError("residue modulo zero");
    return ring_sub(ring, x, ring_mul(ring, p, floor_quotient(ring, x, p)));
}

std::string to_string(EndRing ring, const RingElt& x) {
    if (ring == EndRing::Integers || x.b == 0) return std::to_string(x.a);
    std::string unit = ring == EndRing::Gaussian ? "i" : "w";
    std::string imag = x.b == 1 ? unit : x.b == -1 ? "-" + unit : std::to_string(x.b) + unit;
    if (x.a == 0) return imag;
    return std::to_string(x.a) + (x.b > 0 ? "+" : "") + imag;
}

SubgroupMatrix::SubgroupMatrix(EndRing ring, int rows, int cols, std::vector<RingElt> entries)
    : ring_(ring), rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (rows < 1) throw DomainError("subgroup matrix needs r >= 1");
    if (rows > cols) throw DomainError("subgroup matrix needs r <= N");
    if (cols > kMaxColumns) throw DomainError("subgroup matrices limited to N <= " + std::to_string(kMaxColumns));
    if (entries_.size() != static_cast<size_t>(rows) * static_cast<size_t>(cols))
        throw DomainError("subgroup matrix: expected " + std::to_string(rows * cols) + " entries, got " +
                          std::to_string(entries_.size()));
    if (ring == EndRing::Integers)
        for (const auto& e : entries_)
            if (e.b != 0) throw DomainError("subgroup matrix over Z has a non-integer entry");
}

RingElt SubgroupMatrix::minor(const std::vector<int>& columns) const {
    int n = rows_;
    if (static_cast<int>(columns.size()) != n) throw DomainError("minor needs exactly r columns");
    // Fraction-free (Bareiss) elimination; every division is exact.
    std::vector<RingElt> m(static_cast<size_t>(n * n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m[static_cast<size_t>(i * n + j)] = at(i, columns[static_cast<size_t>(j)]);
    auto M = [&](int i, int j) -> RingElt& { return m[static_cast<size_t>(i * n + j)]; };
    bool negate = false;
    RingElt prev{1, 0};
    for (int k = 0; k < n - 1; ++k) {
        if (M(k, k).is_zero()) {
            int swap = -1;
            for (int i = k + 1; i < n; ++i)
                if (!M(i, k).is_zero()) {
                    swap = i;
                    break;
                }
            if (swap < 0) return {0, 0};
            for (int j = 0; j < n; ++j) std::swap(M(k, j), M(swap, j));
            negate = !negate;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j) {
                RingElt t = ring_sub(ring_, ring_mul(ring_, M(i, j), M(k, k)), ring_mul(ring_, M(i, k), M(k, j)));
                M(i, j) = exact_quotient(ring_, t, prev);
            }
        prev = M(k, k);
    }
    RingElt det = M(n - 1, n - 1);
    return negate ? ring_neg(det) : det;
}

std::string SubgroupMatrix::to_string() const {
    std::string out = "[";
    for (int i = 0; i < rows_; ++i) {
        out += i ? ", [" : "[";
        for (int j = 0; j < cols_; ++j) out += (j ? ", " : "") + hb::to_string(ring_, at(i, j));
        out += "]";
    }
    return out + "]";
}

std::int64_t degree_estimate(const SubgroupMatrix& m) {
    i64 total = 0;
    for (const auto& cols : column_subsets(m.cols(), m.rows())) total = checked_add(total, ring_norm(m.ring(), m.minor(cols)));
    if (total == 0) throw DomainError("subgroup matrix does not have rank r (all r x r minors vanish)");
    return total;
}

SubgroupMatrix hermite_normal_form(const SubgroupMatrix& input) {
    SubgroupMatrix m = input;
    EndRing ring = m.ring();
    int r = m.rows(), row = 0;
    for (int col = 0; col < m.cols() && row < r; ++col) {
        for (;;) {
            int best = -1;
            for (int k = row; k < r; ++k)
                if (!m.at(k, col).is_zero() &&
                    (best < 0 || ring_norm(ring, m.at(k, col)) < ring_norm(ring, m.at(best, col))))
                    best = k;
            if (best < 0) break;
            if (best != row)
                for (int j = 0; j < m.cols(); ++j) std::swap(m.at(row, j), m.at(best, j));
            bool done = true;
            for (int k = row + 1; k < r; ++k) {
                if (m.at(k, col).is_zero()) continue;
                row_axpy(m, k, row, nearest_quotient(ring, m.at(k, col), m.at(row, col)), col);
                if (!m.at(k, col).is_zero()) done = false;
            }
            if (done) break;
        }
        if (m.at(row, col).is_zero()) continue;
        RingElt target = canonical_associate(ring, m.at(row, col));
        for (const RingElt& u : ring_units(ring))
            if (ring_mul(ring, u, m.at(row, col)) == target) {
                for (int j = col; j < m.cols(); ++j) m.at(row, j) = ring_mul(ring, u, m.at(row, j));
                break;
            }
        for (int k = 0; k < row; ++k)
            row_axpy(m, k, row, floor_quotient(ring, m.at(k, col), m.at(row, col)), col);
        ++row;
    }
    if (row < r) throw DomainError("subgroup matrix does not have rank r");
    return m;
}

ReducedRows reduce_rows(const SubgroupMatrix& m) {
    std::vector<int> best;
    i64 best_norm = 0;
    for (const auto& cols : column_subsets(m.cols(), m.rows())) {
        i64 nrm = ring_norm(m.ring(), m.minor(cols));
        if (nrm > best_norm) {
            best_norm = nrm;
            best = cols;
        }
    }
    if (best_norm == 0) throw DomainError("subgroup matrix does not have rank r");
    std::vector<int> perm = best;
    for (int j = 0; j < m.cols(); ++j)
        if (std::find(best.begin(), best.end(), j) == best.end()) perm.push_back(j);
    std::vector<RingElt> entries;
    for (int i = 0; i < m.rows(); ++i)
        for (int j : perm) entries.push_back(m.at(i, j));
    SubgroupMatrix h = hermite_normal_form(SubgroupMatrix(m.ring(), m.rows(), m.cols(), std::move(entries)));

    int r = m.rows();
    std::vector<int> lead(static_cast<size_t>(r));
    for (int i = 0; i < r; ++i) lead[static_cast<size_t>(i)] = i;
    i64 det_norm = ring_norm(m.ring(), h.minor(lead));
    bool dominant = true;
    for (int k = r; k < m.cols() && dominant; ++k)
        for (int i = 0; i < r; ++i) {
            std::vector<int> cols = lead;
            cols[static_cast<size_t>(i)] = k;
            if (ring_norm(m.ring(), h.minor(cols)) > det_norm) {
                dominant = false;
                break;
            }
        }
    return {std::move(perm), std::move(h), dominant};
}

namespace {

struct PivotConfig {
    std::vector<int> columns;
    std::vector<RingElt> pivots;
};

struct EnumerationPlan {
    EndRing ring;
    int N, r;
    i64 dmax;
    std::vector<RingElt> free_values;
    std::vector<PivotConfig> configs;
};

// Bound on the norm of an entry outside the pivot columns: the row equals
// T y with |y_j| = |minor_j| / |det T| <= sqrt(dmax) / |det T|, and each
// entry of T is below twice its column's pivot in absolute value.
i64 free_entry_norm_bound(int r, i64 dmax) {
    if (r == 1) return dmax;
    return checked_mul(checked_mul(4, static_cast<i64>(r) * r), dmax);
}

void pivot_tuples(const std::vector<RingElt>& canon, EndRing ring, int r, i64 budget, std::vector<RingElt>& cur,
                  std::vector<std::vector<RingElt>>& out) {
    if (static_cast<int>(cur.size()) == r) {
        out.push_back(cur);
        return;
    }
    for (const RingElt& p : canon) {
        i64 nrm = ring_norm(ring, p);
        if (nrm > budget) continue;
        cur.push_back(p);
        pivot_tuples(canon, ring, r, budget / nrm, cur, out);
        cur.pop_back();
    }
}

EnumerationPlan make_plan(EndRing ring, int N, int r, i64 dmax) {
    if (N < 1 || N > kMaxColumns) throw DomainError("census needs 1 <= N <= " + std::to_string(kMaxColumns));
    if (r < 1 || r > N) throw DomainError("census needs 1 <= r <= N");
    if (dmax < 0) throw DomainError("maximal degree must be nonnegative");
    if (dmax > 1'000'000'000) throw ResourceGuardError("maximal degree above 10^9 is not supported");
    EnumerationPlan plan{ring, N, r, dmax, {}, {}};
    if (dmax == 0) return plan;
    plan.free_values = elements_up_to_norm(ring, free_entry_norm_bound(r, dmax));
    std::vector<RingElt> canon;
    for (const RingElt& x : elements_up_to_norm(ring, dmax))
        if (!x.is_zero() && canonical_associate(ring, x) == x) canon.push_back(x);
    std::vector<std::vector<RingElt>> tuples;
    std::vector<RingElt> cur;
    pivot_tuples(canon, ring, r, dmax, cur, tuples);
    for (const auto& cols : column_subsets(N, r))
        for (const auto& t : tuples) plan.configs.push_back({cols, t});
    return plan;
}

// Positions (row, col) that are neither forced zero, pivots nor residues.
std::vector<std::pair<int, int>> free_positions(const PivotConfig& c, int N) {
    std::vector<std::pair<int, int>> out;
    for (size_t i = 0; i < c.columns.size(); ++i)
        for (int k = c.columns[i] + 1; k < N; ++k)
            if (std::find(c.columns.begin(), c.columns.end(), k) == c.columns.end())
                out.emplace_back(static_cast<int>(i), k);
    return out;
}

std::uint64_t config_size(const EnumerationPlan& plan, const PivotConfig& c) {
    long double size = 1;
    for (size_t j = 0; j < c.pivots.size(); ++j)
        size *= std::pow(static_cast<long double>(residue_count(plan.ring, c.pivots[j])), static_cast<long double>(j));
    size *= std::pow(static_cast<long double>(plan.free_values.size()),
                     static_cast<long double>(free_positions(c, plan.N).size()));
    return size > 1.8e19L ? UINT64_MAX : static_cast<std::uint64_t>(size);
}

void enumerate_config(const EnumerationPlan& plan, const PivotConfig& c, std::vector<SubgroupMatrix>& out) {
    int r = plan.r, N = plan.N;
    // Variable slots: residues above pivots, then free entries.
    std::vector<std::pair<int, int>> slots;
    std::vector<const std::vector<RingElt>*> choices;
    std::vector<std::vector<RingElt>> residues(static_cast<size_t>(r));
    for (int j = 0; j < r; ++j) residues[static_cast<size_t>(j)] = residue_system(plan.ring, c.pivots[static_cast<size_t>(j)]);
    for (int j = 0; j < r; ++j)
        for (int i = 0; i < j; ++i) {
            slots.emplace_back(i, c.columns[static_cast<size_t>(j)]);
            choices.push_back(&residues[static_cast<size_t>(j)]);
        }
    for (const auto& pos : free_positions(c, N)) {
        slots.push_back(pos);
        choices.push_back(&plan.free_values);
    }
    SubgroupMatrix m(plan.ring, r, N, std::vector<RingElt>(static_cast<size_t>(r * N)));
    for (int i = 0; i < r; ++i) m.at(i, c.columns[static_cast<size_t>(i)]) = c.pivots[static_cast<size_t>(i)];
    std::vector<size_t> idx(slots.size(), 0);
    for (const auto* ch : choices)
        if (ch->empty()) return;
    for (;;) {
        for (size_t s = 0; s < slots.size(); ++s) m.at(slots[s].first, slots[s].second) = (*choices[s])[idx[s]];
        i64 deg = 0;
        for (const auto& cols : column_subsets(N, r)) {
            deg = checked_add(deg, ring_norm(plan.ring, m.minor(cols)));
            if (deg > plan.dmax) break;
        }
        if (deg <= plan.dmax) out.push_back(m);
        size_t s = 0;
        for (; s < slots.size(); ++s) {
            if (++idx[s] < choices[s]->size()) break;
            idx[s] = 0;
        }
        if (s == slots.size()) break;
    }
}

}  // namespace

std::uint64_t predicted_enumeration_size(EndRing ring, int N, int r, std::int64_t dmax) {
    EnumerationPlan plan = make_plan(ring, N, r, dmax);
    std::uint64_t total = 0;
    for (const auto& c : plan.configs) {
        std::uint64_t s = config_size(plan, c);
        total = (UINT64_MAX - total < s) ? UINT64_MAX : total + s;
    }
    return total;
}

std::vector<SubgroupMatrix> enumerate_matrices(EndRing ring, int N, int r, std::int64_t dmax, std::uint64_t ceiling,
                                               unsigned shards) {
    std::uint64_t predicted = predicted_enumeration_size(ring, N, r, dmax);
    if (predicted > ceiling)
        throw ResourceGuardError("enumeration would inspect " +
                                 (predicted == UINT64_MAX ? std::string("more than 1.8e19")
                                                          : "about " + std::to_string(predicted)) +
                                 " candidate matrices, above the ceiling of " + std::to_string(ceiling));
    EnumerationPlan plan = make_plan(ring, N, r, dmax);
    shards = std::max(1u, shards);
    std::vector<std::vector<SubgroupMatrix>> parts(shards);
    std::vector<std::exception_ptr> errors(shards);
    std::vector<std::thread> threads;
    for (unsigned s = 0; s < shards; ++s)
        threads.emplace_back([&, s] {
            try {
                for (size_t i = s; i < plan.configs.size(); i += shards) enumerate_config(plan, plan.configs[i], parts[s]);
            } catch (...) {
                errors[s] = std::current_exception();
            }
        });
    for (auto& t : threads) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    std::vector<std::pair<i64, SubgroupMatrix>> keyed;
    for (auto& p : parts)
        for (auto& m : p) keyed.emplace_back(degree_estimate(m), std::move(m));
    std::sort(keyed.begin(), keyed.end(), [](const auto& x, const auto& y) {
        return x.first != y.first ? x.first < y.first : x.second < y.second;
    });
    std::vector<SubgroupMatrix> out;
    out.reserve(keyed.size());
    for (auto& [d, m] : keyed) out.push_back(std::move(m));
    return out;
}

Integer torsion_count(int N, long T) {
    if (N < 1) throw DomainError("torsion count needs N >= 1");
    if (T < 0) throw DomainError("torsion order bound must be nonnegative");
    Integer total = 0;
    for (long i = 1; i <= T; ++i) total += pow_integer(Integer(i), static_cast<unsigned long>(2 * N));
    return total;
}

Integer torsion_exact_order(int N, long i) {
    if (N < 1 || i < 1) throw DomainError("exact-order count needs N >= 1 and i >= 1");
    auto k = static_cast<unsigned long>(2 * N);
    Integer result = pow_integer(Integer(i), k);
    long n = i;
    for (long p = 2; p * p <= n; ++p) {
        if (n % p != 0) continue;
        while (n % p == 0) n /= p;
        Integer pk = pow_integer(Integer(p), k);
        result = result / pk * (pk - 1);
    }
    if (n > 1) {
        Integer pk = pow_integer(Integer(n), k);
        result = result / pk * (pk - 1);
    }
    return result;
}

CensusReport census(EndRing ring, int N, int r, std::int64_t max_degree, long torsion_bound, std::uint64_t ceiling,
                    unsigned shards) {
    if (torsion_bound < 1) throw DomainError("torsion order bound must satisfy T >= 1");
    if (torsion_bound > 100000) throw ResourceGuardError("torsion order bound above 100000 is not supported");
    std::vector<SubgroupMatrix> mats = enumerate_matrices(ring, N, r, max_degree, ceiling, shards);
    CensusReport rep{ring, N, r, max_degree, torsion_bound, mats.size(), {}, {}, {}, 0, 0, 0};
    std::map<i64, std::uint64_t> buckets;
    for (const auto& m : mats) ++buckets[degree_estimate(m)];
    std::uint64_t running = 0;
    for (const auto& [d, c] : buckets) {
        rep.by_degree.emplace_back(d, c);
        running += c;
        rep.cumulative.emplace_back(d, running);
        Rational ratio = make_rational(Integer(static_cast<unsigned long>(running)),
                                       pow_integer(Integer(static_cast<long>(d)), static_cast<unsigned long>(N)));
        if (ratio > rep.kappa) rep.kappa = ratio;
    }
    for (long i = 1; i <= torsion_bound; ++i)
        rep.torsion.push_back({i, pow_integer(Integer(i), static_cast<unsigned long>(2 * N)), torsion_exact_order(N, i)});
    rep.torsion_total = torsion_count(N, torsion_bound);
    rep.product_bound = Integer(static_cast<unsigned long>(rep.matrix_count)) *
                        pow_integer(Integer(torsion_bound), static_cast<unsigned long>(2 * N + 1));
    return rep;
}

}  // namespace hb
