#pragma once

#include "algint/errors.hpp"
#include "algint/interval.hpp"
#include "algint/io_format.hpp"
#include "algint/jobs.hpp"
#include "algint/poly.hpp"
#include "algint/polytope.hpp"
#include "algint/rational.hpp"
#include "algint/sturm.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <thread>
#include <vector>

namespace algint {

// --- Jacobian of the two-root factorization chart ---

// Point of the coordinate change (b, alpha, beta) -> (a_{n-1}, ..., a_0)
// defined by xi x^n + sum a_k x^k = (x-alpha)(x-beta)(xi x^{n-2} + sum b_m x^m).
struct FactorizationPoint {
    int n;
    double xi;
    std::vector<double> b;  // b_0 .. b_{n-3}
    double alpha;
    double beta;
};

struct JacobianReport {
    double formula;   // (beta-alpha) g(b,alpha) g(b,beta)
    double numeric;   // central-difference determinant
    double rel_error;
    bool singular;    // |formula| < 1e-12; relative error meaningless
};

namespace verify_detail {

inline std::vector<double> factorization_outputs(const FactorizationPoint& fp,
                                                 const std::vector<double>& in) {
    // in = (b_{n-3}, ..., b_0, alpha, beta)
    int n = fp.n;
    size_t nb = static_cast<size_t>(n - 2);
    std::vector<double> g(nb + 1);  // low-to-high, leading xi
    for (size_t m = 0; m < nb; ++m) g[m] = in[nb - 1 - m];
    g[nb] = fp.xi;
    double alpha = in[nb], beta = in[nb + 1];
    std::vector<double> q = {alpha * beta, -(alpha + beta), 1.0};
    std::vector<double> prod(g.size() + 2, 0.0);
    for (size_t i = 0; i < g.size(); ++i)
        for (size_t j = 0; j < 3; ++j) prod[i + j] += g[i] * q[j];
    // outputs (a_{n-1}, ..., a_0)
    std::vector<double> out(static_cast<size_t>(n));
    for (int j = 0; j < n; ++j) out[static_cast<size_t>(j)] = prod[static_cast<size_t>(n - 1 - j)];
    return out;
}

inline double eval_g(const FactorizationPoint& fp, double x) {
    double v = fp.xi;
    for (size_t m = fp.b.size(); m-- > 0;) v = v * x + fp.b[m];
    return v;
}

inline double det_double(std::vector<std::vector<double>> m) {
    size_t d = m.size();
    double det = 1.0;
    for (size_t col = 0; col < d; ++col) {
        size_t piv = col;
        for (size_t r = col + 1; r < d; ++r)
            if (std::abs(m[r][col]) > std::abs(m[piv][col])) piv = r;
        if (m[piv][col] == 0.0) return 0.0;
        if (piv != col) {
            std::swap(m[piv], m[col]);
            det = -det;
        }
        det *= m[col][col];
        for (size_t r = col + 1; r < d; ++r) {
            double f = m[r][col] / m[col][col];
            for (size_t c = col; c < d; ++c) m[r][c] -= f * m[col][c];
        }
    }
    return det;
}

}  // namespace verify_detail

// Central-finite-difference check of the Jacobian identity
// det d(a)/d(b, alpha, beta) = (beta - alpha) g(b, alpha) g(b, beta);
// for n = 2 this specializes to xi^2 (beta - alpha).
inline JacobianReport jacobian_check(const FactorizationPoint& fp) {
    if (fp.n < 2) throw validation_error("jacobian_check requires n >= 2");
    if (static_cast<int>(fp.b.size()) != fp.n - 2)
        throw validation_error("jacobian_check needs n-2 coefficients in b");
    double formula = (fp.beta - fp.alpha) * verify_detail::eval_g(fp, fp.alpha) *
                     verify_detail::eval_g(fp, fp.beta);
    size_t dim = static_cast<size_t>(fp.n);
    std::vector<double> x0(dim);
    for (size_t m = 0; m < fp.b.size(); ++m) x0[m] = fp.b[fp.b.size() - 1 - m];
    x0[dim - 2] = fp.alpha;
    x0[dim - 1] = fp.beta;
    double scale = 1.0;
    for (double v : x0) scale = std::max(scale, std::abs(v));
    scale = std::max(scale, std::abs(fp.xi));
    double h = 1e-6 * scale;
    std::vector<std::vector<double>> jac(dim, std::vector<double>(dim));
    for (size_t j = 0; j < dim; ++j) {
        std::vector<double> xp = x0, xm = x0;
        xp[j] += h;
        xm[j] -= h;
        std::vector<double> fp_out = verify_detail::factorization_outputs(fp, xp);
        std::vector<double> fm_out = verify_detail::factorization_outputs(fp, xm);
        for (size_t i = 0; i < dim; ++i) jac[i][j] = (fp_out[i] - fm_out[i]) / (2 * h);
    }
    double numeric = verify_detail::det_double(jac);
    JacobianReport rep{formula, numeric, 0.0, std::abs(formula) < 1e-12};
    rep.rel_error = std::abs(numeric - formula) / std::max(1.0, std::abs(formula));
    return rep;
}

// --- shifted-absolute-integral inequalities over a symmetric region ---

struct DiffLemmaReport {
    Rat integral_shifted;  // int |v.x + eps|
    Rat integral_plain;    // int |v.x|
    Rat lower;             // (1-lambda) eps mes V(lambda eps)
    Rat upper;             // eps mes V(eps)
    bool lower_ok;
    bool upper_ok;
    bool equality_applicable;  // V(eps) = V
    bool equality_ok;          // int |v.x + eps| == eps 2^d
};

// V = [-1,1]^d. All quantities exact; both inequalities and the equality
// case are decided by exact rational comparison.
inline DiffLemmaReport diff_lemma_check(int d, const RatVec& v, const Rat& eps,
                                        const Rat& lambda) {
    if (d < 1 || static_cast<int>(v.size()) != d)
        throw validation_error("diff_lemma_check: vector length must equal d");
    if (polytope_detail::is_zero_vec(v))
        throw validation_error("diff_lemma_check requires a nonzero vector");
    if (eps < 0) throw validation_error("diff_lemma_check requires eps >= 0");
    if (!(lambda > 0 && lambda < 1))
        throw validation_error("diff_lemma_check requires 0 < lambda < 1");
    RatVec zero(static_cast<size_t>(d), Rat(0));
    auto box_abs_integral = [&](const Rat& offset) {
        return integrate_abs_affine_exact(SlabBoxPolytope(d, zero, Rat(0), v, offset));
    };
    auto slab_measure = [&](const Rat& e) -> Rat {
        if (e == 0) return Rat(0);  // v nonzero: the slice {v.x = 0} is null
        RatVec w = v;
        for (Rat& wi : w) wi /= e;
        return volume_exact(SlabBoxPolytope(d, std::move(w), Rat(0), zero, Rat(0)));
    };
    DiffLemmaReport rep{};
    rep.integral_shifted = box_abs_integral(eps);
    rep.integral_plain = box_abs_integral(Rat(0));
    rep.lower = (Rat(1) - lambda) * eps * slab_measure(lambda * eps);
    rep.upper = eps * slab_measure(eps);
    Rat diff = rep.integral_shifted - rep.integral_plain;
    rep.lower_ok = rep.lower <= diff;
    rep.upper_ok = diff <= rep.upper;
    Rat box_vol = Rat(Int(1) << d);
    rep.equality_applicable = eps > 0 && rep.upper == eps * box_vol;
    rep.equality_ok = !rep.equality_applicable || rep.integral_shifted == eps * box_vol;
    return rep;
}

// --- section area and diameter of a two-strip region ---

struct SectionReport {
    double area_measured;
    double area_formula;  // 4 H1 H2 / sqrt(a^2 b^2 - (a.b)^2)
    double diam_measured;
    double diam_lower_stated, diam_upper_stated;      // bounds as printed
    double diam_lower_adjusted, diam_upper_adjusted;  // factor-2-adjusted
    bool area_ok;
    bool stated_bounds_bracket;
    bool adjusted_bounds_bracket;
};

// Constructs the section of {|a.x| <= H1, |b.x| <= H2} by span(a, b) as an
// explicit parallelogram and measures it directly. The printed
// diameter bounds disagree with its own area convention by a factor of 2, so
// both the stated and the adjusted brackets are reported.
inline SectionReport section_check(const std::vector<double>& a, const std::vector<double>& b,
                                   double H1, double H2) {
    if (a.size() != b.size() || a.empty())
        throw validation_error("section_check requires vectors of equal dimension");
    if (!(H1 > 0 && H2 > 0)) throw validation_error("section_check requires H1, H2 > 0");
    double aa = 0, bb = 0, ab = 0;
    for (size_t i = 0; i < a.size(); ++i) {
        aa += a[i] * a[i];
        bb += b[i] * b[i];
        ab += a[i] * b[i];
    }
    double disc = aa * bb - ab * ab;
    if (!(disc > 1e-14 * aa * bb)) throw validation_error("section_check: vectors are collinear");
    // vertices +-P +- R with P, R in span(a, b) solving the strip equalities
    size_t k = a.size();
    std::vector<double> P(k), R(k);
    double sP = H1 * bb / disc, rP = -H1 * ab / disc;
    double sR = -H2 * ab / disc, rR = H2 * aa / disc;
    for (size_t i = 0; i < k; ++i) {
        P[i] = sP * a[i] + rP * b[i];
        R[i] = sR * a[i] + rR * b[i];
    }
    double PP = 0, RR = 0, PR = 0;
    for (size_t i = 0; i < k; ++i) {
        PP += P[i] * P[i];
        RR += R[i] * R[i];
        PR += P[i] * R[i];
    }
    SectionReport rep{};
    rep.area_measured = 4.0 * std::sqrt(std::max(0.0, PP * RR - PR * PR));
    rep.area_formula = 4.0 * H1 * H2 / std::sqrt(disc);
    double diag1 = 0, diag2 = 0;
    for (size_t i = 0; i < k; ++i) {
        diag1 += (P[i] + R[i]) * (P[i] + R[i]);
        diag2 += (P[i] - R[i]) * (P[i] - R[i]);
    }
    rep.diam_measured = 2.0 * std::sqrt(std::max(diag1, diag2));
    rep.diam_lower_stated = std::sqrt(bb * H1 * H1 + aa * H2 * H2) / std::sqrt(disc);
    rep.diam_upper_stated = (std::sqrt(bb) * H1 + std::sqrt(aa) * H2) / std::sqrt(disc);
    rep.diam_lower_adjusted = 2.0 * rep.diam_lower_stated;
    rep.diam_upper_adjusted = 2.0 * rep.diam_upper_stated;
    rep.area_ok = std::abs(rep.area_measured - rep.area_formula) <=
                  1e-10 * std::max(1.0, std::abs(rep.area_formula));
    double pad = 1e-12 * std::max(1.0, rep.diam_measured);
    rep.stated_bounds_bracket = rep.diam_lower_stated <= rep.diam_measured + pad &&
                                rep.diam_measured <= rep.diam_upper_stated + pad;
    rep.adjusted_bounds_bracket = rep.diam_lower_adjusted <= rep.diam_measured + pad &&
                                  rep.diam_measured <= rep.diam_upper_adjusted + pad;
    return rep;
}

// --- Monte Carlo estimate of the two-root coefficient measure ---

struct TwoRootQuery {
    int n;
    Rat xi;            // leading coefficient, 0 < xi <= 1
    RationalInterval I;  // |I| <= 1
    long samples;
    uint64_t seed;
};

struct TwoRootEstimate {
    double estimate;  // measure of the >= 2 roots event, box volume 2^n
    double err;       // 3 sigma
    double ratio;     // estimate / ((xi + rho^-3)^2 |I|^3)
    double rho;
    long hits;
};

namespace verify_detail {

// gcd(p, p') up to sign via the signed pseudo-remainder chain.
inline IntPoly poly_gcd_with_derivative(const IntPoly& p) {
    SturmChain chain = sturm_chain(p);
    IntPoly last = chain.polys.back();
    if (last.degree() < 1) return IntPoly(std::vector<Int>{Int(1)});
    if (last.leading() < 0)
        for (Int& c : last.c) c = -c;
    return last;
}

// Exact division over Q restricted to integral results; both inputs
// primitive keeps the quotient integral.
inline std::optional<IntPoly> divide_exact_general(const IntPoly& a, const IntPoly& b) {
    if (b.is_zero()) return std::nullopt;
    std::vector<Rat> rem(a.c.size());
    for (size_t i = 0; i < a.c.size(); ++i) rem[i] = Rat(a.c[i]);
    int da = a.degree(), db = b.degree();
    if (da < db) return std::nullopt;
    std::vector<Rat> quo(static_cast<size_t>(da - db) + 1, Rat(0));
    Rat lead(b.leading());
    for (int k = da - db; k >= 0; --k) {
        Rat q = rem[static_cast<size_t>(k + db)] / lead;
        quo[static_cast<size_t>(k)] = q;
        for (int j = 0; j <= db; ++j)
            rem[static_cast<size_t>(k + j)] -= q * Rat(b.c[static_cast<size_t>(j)]);
    }
    for (int j = 0; j < db; ++j)
        if (rem[static_cast<size_t>(j)] != 0) return std::nullopt;
    std::vector<Int> out(quo.size());
    for (size_t i = 0; i < quo.size(); ++i) {
        if (denominator(quo[i]) != 1) return std::nullopt;
        out[i] = numerator(quo[i]);
    }
    return IntPoly(std::move(out));
}

inline IntPoly squarefree_part(const IntPoly& p) {
    IntPoly prim = primitive_part(p);
    IntPoly g = primitive_part(poly_gcd_with_derivative(prim));
    if (g.degree() < 1) return prim;
    auto q = divide_exact_general(prim, g);
    return q ? *q : prim;
}

// Exact count of distinct roots in I; multiplicities collapse through the
// squarefree part, recursively for the repeated-root factor.
inline int distinct_roots_in(const IntPoly& p, const RationalInterval& I) {
    if (p.degree() < 1) return 0;
    IntPoly sq = squarefree_part(p);
    return count_roots_halfopen(sq, I);
}

// p has >= 2 roots in I counted with multiplicity?
inline bool at_least_two_roots(const IntPoly& p, const RationalInterval& I) {
    if (p.degree() < 2) return false;
    IntPoly prim = primitive_part(p);
    IntPoly g = primitive_part(poly_gcd_with_derivative(prim));
    if (g.degree() < 1) return count_roots_halfopen(prim, I) >= 2;
    auto q = divide_exact_general(prim, g);
    IntPoly sq = q ? *q : prim;
    if (count_roots_halfopen(sq, I) >= 2) return true;
    return distinct_roots_in(g, I) >= 1;  // a repeated root inside I
}

}  // namespace verify_detail

// Monte Carlo over the coefficient box [-1,1]^n with leading coefficient xi:
// fraction of polynomials with >= 2 roots in I, times box volume 2^n.
// Samples are drawn on a dyadic lattice (denominator 2^17), so each root
// count is decided exactly by the realroots machinery; no ambiguous samples.
// Sharded with derived seeds; the result is identical for any job count.
inline TwoRootEstimate two_root_measure(const TwoRootQuery& q, int jobs = 0) {
    if (q.n < 2) throw validation_error("two_root_measure requires n >= 2");
    if (!(q.xi > 0 && q.xi <= 1)) throw validation_error("two_root_measure requires 0 < xi <= 1");
    if (q.I.length() > 1) throw validation_error("two_root_measure requires |I| <= 1");
    if (q.samples < 100000)
        throw validation_error("two_root_measure requires at least 1e5 samples");
    jobs = resolve_jobs(jobs);

    constexpr int kShards = 64;
    constexpr int kLatticeBits = 17;
    const Int scale = Int(1) << kLatticeBits;
    const Int xi_num = numerator(q.xi), xi_den = denominator(q.xi);

    std::vector<long> shard_hits(kShards, 0);
    std::atomic<int> next{0};
    auto worker = [&] {
        while (true) {
            int s = next.fetch_add(1);
            if (s >= kShards) break;
            long count = q.samples / kShards + (s < q.samples % kShards ? 1 : 0);
            polytope_detail::SplitMix64 rng(q.seed * 0x9E3779B97F4A7C15ull + 0xD1B54A32D192ED03ull * static_cast<uint64_t>(s + 1));
            long hits = 0;
            std::vector<Int> coeffs(static_cast<size_t>(q.n) + 1);
            for (long it = 0; it < count; ++it) {
                // lattice midpoints (2j+1)/2^17, j uniform in [-2^16, 2^16)
                for (int i = 0; i < q.n; ++i) {
                    long long j = static_cast<long long>(rng.next() >> (64 - kLatticeBits)) -
                                  (1ll << (kLatticeBits - 1));
                    coeffs[static_cast<size_t>(i)] = Int(2 * j + 1) * xi_den;
                }
                coeffs[static_cast<size_t>(q.n)] = xi_num * scale;
                IntPoly p(std::vector<Int>(coeffs.begin(), coeffs.end()));
                if (verify_detail::at_least_two_roots(p, q.I)) ++hits;
            }
            shard_hits[static_cast<size_t>(s)] = hits;
        }
    };
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int j = 0; j < std::min(jobs, kShards); ++j) pool.emplace_back(worker);
        for (std::thread& th : pool) th.join();
    }
    long hits = 0;
    for (long h : shard_hits) hits += h;

    double nn = static_cast<double>(q.samples);
    double frac = static_cast<double>(hits) / nn;
    double box_vol = std::ldexp(1.0, q.n);
    double se = std::sqrt(std::max(0.0, frac * (1 - frac) / nn));
    double rho = std::max(1.0, std::abs(to_double(q.I.lo + q.I.hi)) / 2.0);
    double xi_d = to_double(q.xi);
    double len = to_double(q.I.length());
    double denom = std::pow(xi_d + 1.0 / (rho * rho * rho), 2) * len * len * len;
    return {frac * box_vol, 3.0 * se * box_vol, frac * box_vol / denom, rho, hits};
}

}  // namespace algint
