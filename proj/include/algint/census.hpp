#pragma once

#include "algint/errors.hpp"
#include "algint/interval.hpp"
#include "algint/io_format.hpp"
#include "algint/jobs.hpp"
#include "algint/poly.hpp"
#include "algint/rational.hpp"
#include "algint/sturm.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

namespace algint {

// Exact census of monic degree-n integer polynomials of height <= Q:
// per-bin root counts (Omega contributions), per-bin exact-k polynomial
// counts N(k), reducible/irreducible totals and the observed root radius.
struct CensusTable {
    int n = 0;
    long long Q = 0;
    std::vector<RationalInterval> bins;
    std::vector<Int> omega;             // per-bin total root count
    std::vector<std::vector<Int>> nk;   // [bin][k-1] = N(k), k = 1..n
    Int reducible_count = 0;
    Int irreducible_count = 0;
    Rat max_abs_root_upper = 0;         // refined upper bound on max |root|
    bool all_roots_inside = true;       // every root strictly inside (-Q-1, Q+1)
};

// delta(n) in the residual normalization Q^{n-1} (ln Q)^{delta(n)}:
// the log factor appears for n <= 2 only.
struct ResidualModel {
    int delta;
};

inline ResidualModel residual_model(int n) { return {n <= 2 ? 1 : 0}; }

namespace census_detail {

constexpr long long kDefaultBudget = 200000000;  // cap on (2Q+1)^n

inline void check_budget(int n, long long Q, long long budget) {
    Int total = int_pow(Int(2 * Q + 1), static_cast<unsigned>(n));
    if (total > budget)
        throw budget_error("(2Q+1)^n = " + total.str() + " exceeds budget " +
                           std::to_string(budget));
}

inline void check_degree(int n) {
    if (n < 2 || n > 5)
        throw validation_error("census supports 2 <= n <= 5, got " + std::to_string(n));
}

// Bins sorted by lo with pairwise-disjointness verified; returns the
// permutation mapping sorted order to the caller's order.
inline std::vector<size_t> sorted_bin_order(const std::vector<RationalInterval>& bins) {
    std::vector<size_t> order(bins.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&bins](size_t a, size_t b) { return bins[a].lo < bins[b].lo; });
    for (size_t i = 0; i + 1 < order.size(); ++i)
        if (bins[order[i]].hi > bins[order[i + 1]].lo)
            throw validation_error("bins overlap: " + bins[order[i]].str() + " and " +
                                   bins[order[i + 1]].str());
    return order;
}

// Divisor table for 1..Q; divisors[v] lists the positive divisors of v.
inline std::vector<std::vector<long long>> divisor_table(long long Q) {
    std::vector<std::vector<long long>> divs(static_cast<size_t>(Q) + 1);
    for (long long d = 1; d <= Q; ++d)
        for (long long m = d; m <= Q; m += d) divs[static_cast<size_t>(m)].push_back(d);
    return divs;
}

// Irreducibility with the divisor table as the fast integer-root path.
// coeffs is the full low-to-high coefficient vector including the leading 1.
inline bool irreducible_fast(const std::vector<Int>& coeffs, int n,
                             const std::vector<std::vector<long long>>& divs) {
    if (coeffs[0] == 0) return false;
    long long c0 = std::llabs(coeffs[0].convert_to<long long>());
    for (long long d : divs[static_cast<size_t>(c0)]) {
        Int pos = 0, neg = 0;
        Int dd(d);
        for (size_t i = coeffs.size(); i-- > 0;) {
            pos = pos * dd + coeffs[i];
            neg = neg * (-dd) + coeffs[i];
        }
        if (pos == 0 || neg == 0) return false;
    }
    if (n >= 4) {
        MonicIntPoly p(n, std::vector<Int>(coeffs.begin(), coeffs.end() - 1));
        if (detail::has_monic_quadratic_factor(p)) return false;
    }
    return true;
}

// Odometer over (c_{n-2}, ..., c_0) with c_{n-1} fixed; per_poly receives the
// full coefficient vector (c_0 .. c_{n-1}, 1).
template <typename F>
void enumerate_shard(int n, long long Q, long long c_top, F&& per_poly) {
    std::vector<long long> cur(static_cast<size_t>(n - 1), -Q);
    std::vector<Int> coeffs(static_cast<size_t>(n) + 1);
    coeffs[static_cast<size_t>(n)] = 1;
    coeffs[static_cast<size_t>(n - 1)] = c_top;
    while (true) {
        for (size_t i = 0; i < cur.size(); ++i) coeffs[i] = cur[i];
        per_poly(coeffs);
        size_t i = 0;
        while (i < cur.size() && cur[i] == Q) {
            cur[i] = -Q;
            ++i;
        }
        if (i == cur.size()) break;
        ++cur[i];
    }
}

// Runs worker(shard_top, thread_slot) for every shard, pulling shard indices
// from a shared counter. All per-shard contributions must merge through
// commutative, associative exact operations, which keeps the result
// independent of the job count.
inline void parallel_shards(long long Q, int jobs,
                            const std::function<void(long long, int)>& worker) {
    long long n_shards = 2 * Q + 1;
    jobs = static_cast<int>(std::max<long long>(1, std::min<long long>(jobs, n_shards)));
    std::atomic<long long> next{0};
    auto run = [&](int slot) {
        while (true) {
            long long i = next.fetch_add(1);
            if (i >= n_shards) break;
            worker(i - Q, slot);
        }
    };
    if (jobs == 1) {
        run(0);
        return;
    }
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(run, j);
    for (std::thread& th : pool) th.join();
}

constexpr int kEndpointStrategyLimit = 16;

struct BinIndex {
    std::vector<size_t> order;              // sorted-by-lo permutation
    std::vector<Rat> endpoints;             // sorted unique endpoints
    std::vector<std::pair<int, int>> span;  // bin -> (lo idx, hi idx) in endpoints
    Rat min_width = 0;
    bool use_endpoints = false;
};

inline BinIndex index_bins(const std::vector<RationalInterval>& bins) {
    BinIndex idx;
    idx.order = sorted_bin_order(bins);
    std::vector<Rat> eps;
    for (const RationalInterval& b : bins) {
        eps.push_back(b.lo);
        eps.push_back(b.hi);
        if (idx.min_width == 0 || b.length() < idx.min_width) idx.min_width = b.length();
    }
    std::sort(eps.begin(), eps.end());
    eps.erase(std::unique(eps.begin(), eps.end()), eps.end());
    idx.endpoints = std::move(eps);
    for (const RationalInterval& b : bins) {
        auto lo = std::lower_bound(idx.endpoints.begin(), idx.endpoints.end(), b.lo);
        auto hi = std::lower_bound(idx.endpoints.begin(), idx.endpoints.end(), b.hi);
        idx.span.emplace_back(static_cast<int>(lo - idx.endpoints.begin()),
                              static_cast<int>(hi - idx.endpoints.begin()));
    }
    idx.use_endpoints = idx.endpoints.size() <= kEndpointStrategyLimit;
    return idx;
}

// Refinement slack for the min/max root trackers; must exceed the isolation
// width so skipped polynomials can never affect the merged extremum.
inline Rat tracker_slack() { return Rat(1, Int(1) << 30); }
inline Rat tracker_eps() { return Rat(1, Int(1) << 34); }

// Pure per-polynomial refined upper bound on max |root|.
inline Rat refined_max_abs_root(const detail::ChainCounter& cc, const Rat& bound) {
    std::vector<RationalInterval> ivs;
    int total = cc.in_halfopen(-bound, bound);
    detail::isolate_recurse(cc, -bound, bound, total, tracker_eps(), ivs);
    Rat best = 0;
    for (const RationalInterval& iv : ivs)
        best = std::max(best, std::max(abs_rat(iv.lo), abs_rat(iv.hi)));
    return best;
}

}  // namespace census_detail

// Exhaustive, shard-parallel census. Deterministic for any job count: shard
// contributions merge by exact commutative addition.
inline CensusTable run_census(int n, long long Q, const std::vector<RationalInterval>& bins,
                              long long budget = census_detail::kDefaultBudget, int jobs = 0) {
    census_detail::check_degree(n);
    if (Q < 1) throw validation_error("census requires Q >= 1");
    census_detail::check_budget(n, Q, budget);
    census_detail::BinIndex bidx = census_detail::index_bins(bins);
    auto divs = census_detail::divisor_table(Q);
    jobs = resolve_jobs(jobs);

    Rat exclusion(Q + 1);
    std::vector<CensusTable> partial(static_cast<size_t>(jobs));
    for (CensusTable& t : partial) {
        t.n = n;
        t.Q = Q;
        t.bins = bins;
        t.omega.assign(bins.size(), Int(0));
        t.nk.assign(bins.size(), std::vector<Int>(static_cast<size_t>(n), Int(0)));
    }

    auto worker = [&](long long c_top, int slot) {
        CensusTable& acc = partial[static_cast<size_t>(slot)];
        Rat local_max = acc.max_abs_root_upper;
        std::vector<int> var_cache(bidx.endpoints.size());
        std::vector<int> bin_roots(bins.size());
        census_detail::enumerate_shard(n, Q, c_top, [&](const std::vector<Int>& coeffs) {
            if (!census_detail::irreducible_fast(coeffs, n, divs)) {
                ++acc.reducible_count;
                return;
            }
            ++acc.irreducible_count;
            IntPoly p(std::vector<Int>(coeffs.begin(), coeffs.end()));
            detail::ChainCounter cc{sturm_chain(p), &p};
            int total_roots = count_real_roots(cc.chain);
            int var_neg = variations_at(cc.chain, -exclusion);
            int var_pos = variations_at(cc.chain, exclusion);
            if (var_neg - var_pos != total_roots) acc.all_roots_inside = false;

            if (total_roots > 0) {
                // max-|root| tracker: refine only when the poly can beat the
                // running maximum (conservative slack test keeps this pure).
                Rat thr = local_max - census_detail::tracker_slack();
                bool candidate = local_max == 0;
                if (!candidate && thr < exclusion)
                    candidate = cc.in_halfopen(thr, exclusion) > 0 ||
                                cc.in_halfopen(-exclusion, -thr) > 0;
                if (candidate)
                    local_max = std::max(
                        local_max, census_detail::refined_max_abs_root(cc, exclusion));
            }

            if (bins.empty() || total_roots == 0) return;
            std::fill(bin_roots.begin(), bin_roots.end(), 0);
            if (bidx.use_endpoints) {
                for (size_t e = 0; e < bidx.endpoints.size(); ++e)
                    var_cache[e] = variations_at(cc.chain, bidx.endpoints[e]);
                for (size_t j = 0; j < bins.size(); ++j)
                    bin_roots[j] = var_cache[static_cast<size_t>(bidx.span[j].first)] -
                                   var_cache[static_cast<size_t>(bidx.span[j].second)];
            } else {
                std::vector<RationalInterval> ivs;
                detail::isolate_recurse(cc, -exclusion, exclusion,
                                        cc.in_halfopen(-exclusion, exclusion),
                                        bidx.min_width / 2, ivs);
                for (RationalInterval iv : ivs) {
                    // refine until no bin endpoint falls strictly inside
                    while (true) {
                        auto it = std::upper_bound(bidx.endpoints.begin(), bidx.endpoints.end(),
                                                   iv.lo);
                        if (it == bidx.endpoints.end() || *it >= iv.hi) break;
                        Rat mid = (iv.lo + iv.hi) / 2;
                        if (mid == *it) mid = (iv.lo + mid) / 2;
                        if (cc.in_halfopen(iv.lo, mid) == 1)
                            iv = RationalInterval(iv.lo, mid);
                        else
                            iv = RationalInterval(mid, iv.hi);
                    }
                    // locate the bin whose [lo, hi) contains the interval
                    size_t lo_pos = 0, hi_pos = bidx.order.size();
                    while (lo_pos < hi_pos) {
                        size_t mid = (lo_pos + hi_pos) / 2;
                        if (bins[bidx.order[mid]].lo <= iv.lo)
                            lo_pos = mid + 1;
                        else
                            hi_pos = mid;
                    }
                    if (lo_pos == 0) continue;
                    size_t j = bidx.order[lo_pos - 1];
                    if (iv.hi <= bins[j].hi) ++bin_roots[j];
                }
            }
            for (size_t j = 0; j < bins.size(); ++j) {
                int k = bin_roots[j];
                if (k > 0) {
                    acc.omega[j] += k;
                    acc.nk[j][static_cast<size_t>(k - 1)] += 1;
                }
            }
        });
        acc.max_abs_root_upper = std::max(acc.max_abs_root_upper, local_max);
    };
    census_detail::parallel_shards(Q, jobs, worker);

    CensusTable result = std::move(partial[0]);
    for (size_t s = 1; s < partial.size(); ++s) {
        const CensusTable& t = partial[s];
        result.reducible_count += t.reducible_count;
        result.irreducible_count += t.irreducible_count;
        for (size_t j = 0; j < bins.size(); ++j) {
            result.omega[j] += t.omega[j];
            for (int k = 0; k < n; ++k)
                result.nk[j][static_cast<size_t>(k)] += t.nk[j][static_cast<size_t>(k)];
        }
        result.max_abs_root_upper = std::max(result.max_abs_root_upper, t.max_abs_root_upper);
        result.all_roots_inside = result.all_roots_inside && t.all_roots_inside;
    }
    return result;
}

// Exact #R_n^*(Q): monic degree-n integer polynomials of height <= Q that
// are reducible over Q.
inline Int count_reducible(int n, long long Q,
                           long long budget = census_detail::kDefaultBudget, int jobs = 0) {
    census_detail::check_degree(n);
    if (Q < 1) throw validation_error("census requires Q >= 1");
    census_detail::check_budget(n, Q, budget);
    auto divs = census_detail::divisor_table(Q);
    jobs = resolve_jobs(jobs);
    std::vector<Int> partial(static_cast<size_t>(jobs), Int(0));
    census_detail::parallel_shards(Q, jobs, [&](long long c_top, int slot) {
        Int local = 0;
        census_detail::enumerate_shard(n, Q, c_top, [&](const std::vector<Int>& coeffs) {
            if (!census_detail::irreducible_fast(coeffs, n, divs)) ++local;
        });
        partial[static_cast<size_t>(slot)] += local;
    });
    Int total = 0;
    for (const Int& v : partial) total += v;
    return total;
}

namespace census_detail {

// Pure per-polynomial lower bound (within tracker_eps) on the distance from
// x0 to the nearest root.
inline Rat refined_min_distance(const detail::ChainCounter& cc, const Rat& x0,
                                const Rat& exclusion) {
    std::vector<RationalInterval> ivs;
    int total = cc.in_halfopen(-exclusion, exclusion);
    detail::isolate_recurse(cc, -exclusion, exclusion, total, tracker_eps(), ivs);
    std::optional<Rat> best;
    for (RationalInterval iv : ivs) {
        while (iv.contains(x0)) {
            // x0 is rational, the root is not; split until they separate
            Rat mid = (iv.lo + iv.hi) / 2;
            if (mid == x0) mid = (iv.lo + mid) / 2;
            if (cc.in_halfopen(iv.lo, mid) == 1)
                iv = RationalInterval(iv.lo, mid);
            else
                iv = RationalInterval(mid, iv.hi);
        }
        Rat lb = iv.hi <= x0 ? x0 - iv.hi : iv.lo - x0;
        if (lb < 0) lb = 0;
        if (!best || lb < *best) best = lb;
    }
    return best ? *best : exclusion * 4;
}

}  // namespace census_detail

namespace census_detail {

// One enumeration sweep computing, per query point, the minimum over the
// census of the per-polynomial refined distance lower bound. Polynomials
// that provably cannot improve the running minimum are skipped; the skip
// slack exceeds the refinement width, so the merged minimum is the true
// minimum over all polynomials regardless of sharding.
inline std::vector<Rat> nearest_sweep(int n, long long Q, const std::vector<Rat>& x0s,
                                      const Rat& initial_radius, bool use_prefilter, int jobs,
                                      const std::vector<std::vector<long long>>& divs) {
    size_t nx = x0s.size();
    Rat exclusion(Q + 1);
    Rat slack = tracker_slack();

    // Per-x0 precomputation for the cheap |p(x0)| rejection test:
    // pows[i] = a^i b^{n-i} so that p(x0) b^n = sum c_i pows[i], and L bounds
    // |p'| on [x0 - 2, x0 + 2]; |p(x0)| > L r then rules out roots within r
    // for any r <= 1.
    struct Query {
        Rat x0;
        std::vector<Int> pows;
        Int bn;
        Rat lipschitz;
    };
    std::vector<Query> queries;
    for (const Rat& x0 : x0s) {
        Query q;
        q.x0 = x0;
        Int a = numerator(x0), b = denominator(x0);
        for (int i = 0; i <= n; ++i)
            q.pows.push_back(int_pow(a, static_cast<unsigned>(i)) *
                             int_pow(b, static_cast<unsigned>(n - i)));
        q.bn = int_pow(b, static_cast<unsigned>(n));
        Rat M = abs_rat(x0) + 2;
        Rat L = Rat(n) * rat_pow(M, static_cast<unsigned>(n - 1));
        for (int i = 1; i < n; ++i)
            L += Rat(i) * Rat(Q) * rat_pow(M, static_cast<unsigned>(i - 1));
        q.lipschitz = L;
        queries.push_back(std::move(q));
    }

    std::vector<std::vector<Rat>> partial(static_cast<size_t>(jobs),
                                          std::vector<Rat>(nx, initial_radius));
    parallel_shards(Q, jobs, [&](long long c_top, int slot) {
        std::vector<Rat>& cur = partial[static_cast<size_t>(slot)];
        enumerate_shard(n, Q, c_top, [&](const std::vector<Int>& coeffs) {
            if (!irreducible_fast(coeffs, n, divs)) return;
            if (use_prefilter) {
                bool interesting = false;
                for (size_t qi = 0; qi < nx && !interesting; ++qi) {
                    const Query& q = queries[qi];
                    Int val = 0;
                    for (int i = 0; i <= n; ++i)
                        val += coeffs[static_cast<size_t>(i)] * q.pows[static_cast<size_t>(i)];
                    Rat px0 = Rat(abs_int(val), q.bn);
                    if (px0 <= q.lipschitz * (cur[qi] + slack)) interesting = true;
                }
                if (!interesting) return;
            }
            IntPoly p(std::vector<Int>(coeffs.begin(), coeffs.end()));
            detail::ChainCounter cc{sturm_chain(p), &p};
            if (count_real_roots(cc.chain) == 0) return;
            for (size_t qi = 0; qi < nx; ++qi) {
                Rat lo = std::max(Rat(queries[qi].x0 - cur[qi] - slack), Rat(-exclusion));
                Rat hi = std::min(Rat(queries[qi].x0 + cur[qi] + slack), exclusion);
                if (!(lo < hi) || cc.in_halfopen(lo, hi) == 0) continue;
                Rat d = refined_min_distance(cc, queries[qi].x0, exclusion);
                cur[qi] = std::min(cur[qi], d);
            }
        });
    });

    std::vector<Rat> result(nx, initial_radius);
    for (const std::vector<Rat>& cur : partial)
        for (size_t qi = 0; qi < nx; ++qi) result[qi] = std::min(result[qi], cur[qi]);
    return result;
}

}  // namespace census_detail

// Minimum over the degree-n, height <= Q census of |root - x0| for each
// query point, reported as an exact rational lower bound tight to 1e-9.
// One enumeration sweep serves all query points; queries with no root within
// distance 1 fall back to an unfiltered sweep.
inline std::vector<Rat> nearest_to_rationals(int n, long long Q, const std::vector<Rat>& x0s,
                                             long long budget = census_detail::kDefaultBudget,
                                             int jobs = 0) {
    census_detail::check_degree(n);
    if (Q < 1) throw validation_error("census requires Q >= 1");
    census_detail::check_budget(n, Q, budget);
    if (x0s.empty()) return {};
    auto divs = census_detail::divisor_table(Q);
    jobs = resolve_jobs(jobs);

    // Phase 1: prefiltered sweep with radius capped at 1 (the Lipschitz
    // rejection bound is only valid there).
    std::vector<Rat> result = census_detail::nearest_sweep(n, Q, x0s, Rat(1), true, jobs, divs);

    // Queries that never improved on the cap get the exhaustive sweep.
    std::vector<size_t> retry_idx;
    std::vector<Rat> retry_x0;
    for (size_t qi = 0; qi < x0s.size(); ++qi)
        if (result[qi] == 1) {
            retry_idx.push_back(qi);
            retry_x0.push_back(x0s[qi]);
        }
    if (!retry_idx.empty()) {
        Rat big = Rat(Q + 2);
        for (const Rat& x0 : retry_x0) big = std::max(big, abs_rat(x0) + Q + 2);
        std::vector<Rat> wide =
            census_detail::nearest_sweep(n, Q, retry_x0, big, false, jobs, divs);
        for (size_t i = 0; i < retry_idx.size(); ++i) {
            if (wide[i] == big)
                throw budget_error("empty census: no real algebraic integer of degree " +
                                   std::to_string(n) + " and height <= " + std::to_string(Q));
            result[retry_idx[i]] = wide[i];
        }
    }
    return result;
}

inline Rat nearest_to_rational(int n, long long Q, const Rat& x0,
                               long long budget = census_detail::kDefaultBudget, int jobs = 0) {
    return nearest_to_rationals(n, Q, {x0}, budget, jobs)[0];
}

// --- census vs density-integral residual comparison ---

struct ResidualRow {
    RationalInterval bin;
    Int omega;          // exact count
    double integral;    // int_bin omega_n(1/Q, t) dt
    double residual;    // omega - Q^n integral
    double normalized;  // residual / (Q^{n-1} (ln Q)^delta)
    bool has_refined;
    double refined;         // residual + 2Q int dt/max(1,|t|)   (n = 2 only)
    double refined_over_q;  // refined / Q
};

// integral of dt / max(1, |t|) over [a, b] cap [-Q, Q], exact antiderivative.
inline double log_weight_integral(const Rat& a, const Rat& b, long long Q) {
    double lo = std::max(to_double(a), -static_cast<double>(Q));
    double hi = std::min(to_double(b), static_cast<double>(Q));
    if (lo >= hi) return 0.0;
    auto F = [](double x) {
        if (x > 1) return 1 + std::log(x);
        if (x < -1) return -1 - std::log(-x);
        return x;
    };
    return F(hi) - F(lo);
}

// Per-bin residuals E(Q) = Omega - Q^n * integral, normalized by
// Q^{n-1} (ln Q)^{delta(n)}, plus the refined n = 2 residual.
inline std::vector<ResidualRow> compare_census_to_integral(const CensusTable& table,
                                                           const std::vector<double>& integrals) {
    if (integrals.size() != table.bins.size())
        throw validation_error("mismatched bins: " + std::to_string(integrals.size()) +
                               " integrals for " + std::to_string(table.bins.size()) + " bins");
    int delta = residual_model(table.n).delta;
    double qn = std::pow(static_cast<double>(table.Q), table.n);
    double lognq = table.Q >= 2 ? std::log(static_cast<double>(table.Q)) : 1.0;
    double norm = std::pow(static_cast<double>(table.Q), table.n - 1) *
                  (delta == 1 ? lognq : 1.0);
    std::vector<ResidualRow> rows;
    for (size_t j = 0; j < table.bins.size(); ++j) {
        ResidualRow r{table.bins[j], table.omega[j], integrals[j], 0, 0, false, 0, 0};
        r.residual = to_double(table.omega[j]) - qn * integrals[j];
        r.normalized = r.residual / norm;
        if (table.n == 2) {
            r.has_refined = true;
            r.refined = r.residual + 2.0 * static_cast<double>(table.Q) *
                                         log_weight_integral(r.bin.lo, r.bin.hi, table.Q);
            r.refined_over_q = r.refined / static_cast<double>(table.Q);
        }
        rows.push_back(std::move(r));
    }
    return rows;
}

// --- census.csv / JSON emitters ---

inline void write_census_csv(std::ostream& os, const CensusTable& t) {
    os << "n,Q,bin_lo,bin_hi,omega_count";
    for (int k = 1; k <= t.n; ++k) os << ",N" << k;
    os << "\n";
    for (size_t j = 0; j < t.bins.size(); ++j) {
        os << t.n << ',' << t.Q << ',' << rat_to_string(t.bins[j].lo) << ','
           << rat_to_string(t.bins[j].hi) << ',' << t.omega[j].str();
        for (int k = 1; k <= t.n; ++k) os << ',' << t.nk[j][static_cast<size_t>(k - 1)].str();
        os << "\n";
    }
    os << "reducible_count,irreducible_count\n";
    os << t.reducible_count.str() << ',' << t.irreducible_count.str() << "\n";
}

inline void write_residuals_csv(std::ostream& os, int n, long long Q,
                                const std::vector<ResidualRow>& rows) {
    os << "n,Q,bin_lo,bin_hi,omega_count,integral,residual,normalized,refined,refined_over_q\n";
    for (const ResidualRow& r : rows) {
        os << n << ',' << Q << ',' << rat_to_string(r.bin.lo) << ',' << rat_to_string(r.bin.hi)
           << ',' << r.omega.str() << ',' << format_double(r.integral) << ','
           << format_double(r.residual) << ',' << format_double(r.normalized) << ',';
        if (r.has_refined)
            os << format_double(r.refined) << ',' << format_double(r.refined_over_q);
        else
            os << ',';
        os << "\n";
    }
}

}  // namespace algint
