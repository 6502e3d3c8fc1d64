#pragma once

#include "algint/errors.hpp"
#include "algint/interval.hpp"
#include "algint/poly.hpp"
#include "algint/rational.hpp"

#include <utility>
#include <vector>

namespace algint {

// Signed-remainder sequence of p and p'. Content is stripped at every step;
// the stripping factors are kept positive so sign semantics are untouched.
struct SturmChain {
    std::vector<IntPoly> polys;

    // Last nonzero element has degree >= 1 iff gcd(p, p') is nonconstant.
    bool squarefree() const { return !polys.empty() && polys.back().degree() == 0; }
};

namespace detail {

inline int sign_of(const Int& v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); }

// sign of f(num/den), den > 0, computed as sign of sum c_i num^i den^(d-i).
inline int sign_at(const IntPoly& f, const Int& num, const Int& den) {
    if (f.is_zero()) return 0;
    Int acc = 0;
    Int den_pow = 1;  // den^(d-i) built from the top coefficient down
    for (size_t i = f.c.size(); i-- > 0;) {
        acc = acc * num + f.c[i] * den_pow;
        if (i > 0) den_pow *= den;
    }
    return sign_of(acc);
}

inline int sign_at(const IntPoly& f, const Rat& x) {
    return sign_at(f, numerator(x), denominator(x));
}

inline int count_variations(const std::vector<int>& signs) {
    int var = 0, prev = 0;
    for (int s : signs) {
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++var;
        prev = s;
    }
    return var;
}

}  // namespace detail

inline SturmChain sturm_chain(const IntPoly& p) {
    if (p.degree() < 1) throw validation_error("sturm_chain requires a nonconstant polynomial");
    SturmChain chain;
    chain.polys.push_back(primitive_part(p));
    chain.polys.push_back(primitive_part(derivative(p)));
    while (!chain.polys.back().is_zero() && chain.polys.back().degree() >= 1) {
        const IntPoly& a = chain.polys[chain.polys.size() - 2];
        const IntPoly& b = chain.polys.back();
        // Pseudo-remainder of a by b with multiplier lc(b)^(delta+1); a sign
        // flip of the multiplier is compensated so the next element equals
        // -rem(a, b) times a positive constant.
        int delta = a.degree() - b.degree();
        Int lc = b.leading();
        std::vector<Int> r = a.c;
        int mults_left = delta + 1;
        while (static_cast<int>(r.size()) - 1 >= b.degree()) {
            while (!r.empty() && r.back() == 0) r.pop_back();
            if (static_cast<int>(r.size()) - 1 < b.degree()) break;
            Int top = r.back();
            size_t shift = r.size() - b.c.size();
            for (size_t i = 0; i < r.size(); ++i) r[i] *= lc;
            for (size_t i = 0; i < b.c.size(); ++i) r[i + shift] -= top * b.c[i];
            --mults_left;
        }
        IntPoly rem(std::move(r));
        for (int i = 0; i < mults_left; ++i)
            for (Int& ci : rem.c) ci *= lc;
        bool flip = lc < 0 && ((delta + 1) % 2 != 0);
        IntPoly next = primitive_part(rem);
        if (!flip)
            for (Int& ci : next.c) ci = -ci;
        if (next.is_zero()) break;
        chain.polys.push_back(std::move(next));
    }
    return chain;
}

// Sign variations of the chain at x; var(a) - var(b) counts distinct roots
// of p in (a, b].
inline int variations_at(const SturmChain& chain, const Rat& x) {
    std::vector<int> signs;
    signs.reserve(chain.polys.size());
    for (const IntPoly& f : chain.polys) signs.push_back(detail::sign_at(f, x));
    return detail::count_variations(signs);
}

inline int variations_at_neg_inf(const SturmChain& chain) {
    std::vector<int> signs;
    for (const IntPoly& f : chain.polys) {
        int s = detail::sign_of(f.leading());
        if (f.degree() % 2 != 0) s = -s;
        signs.push_back(s);
    }
    return detail::count_variations(signs);
}

inline int variations_at_pos_inf(const SturmChain& chain) {
    std::vector<int> signs;
    for (const IntPoly& f : chain.polys) signs.push_back(detail::sign_of(f.leading()));
    return detail::count_variations(signs);
}

inline int count_real_roots(const SturmChain& chain) {
    return variations_at_neg_inf(chain) - variations_at_pos_inf(chain);
}

namespace detail {

inline void require_squarefree(const SturmChain& chain) {
    if (!chain.squarefree())
        throw validation_error("polynomial is not squarefree (gcd(p, p') is nonconstant)");
}

}  // namespace detail

// Exact number of distinct real roots of p in [lo, hi). The variation
// difference counts (lo, hi]; the endpoint corrections move it to the
// half-open convention. p must be squarefree.
inline int count_roots_halfopen(const IntPoly& p, const RationalInterval& iv) {
    SturmChain chain = sturm_chain(p);
    detail::require_squarefree(chain);
    int count = variations_at(chain, iv.lo) - variations_at(chain, iv.hi);
    if (detail::sign_at(p, iv.lo) == 0) count += 1;
    if (detail::sign_at(p, iv.hi) == 0) count -= 1;
    return count;
}

inline int count_roots_halfopen(const MonicIntPoly& p, const RationalInterval& iv) {
    return count_roots_halfopen(p.to_int_poly(), iv);
}

// Every real root r of p satisfies |r| < 1 + height(p) (Cauchy bound for a
// monic polynomial), so height <= Q keeps all roots inside (-Q-1, Q+1).
inline Rat max_root_bound(const MonicIntPoly& p) { return Rat(1 + height(p)); }

namespace detail {

// Count of roots in (a, b] given precomputed variations; used by isolation.
struct ChainCounter {
    SturmChain chain;
    const IntPoly* poly;

    int in_halfopen(const Rat& lo, const Rat& hi) const {
        int count = variations_at(chain, lo) - variations_at(chain, hi);
        if (sign_at(*poly, lo) == 0) count += 1;
        if (sign_at(*poly, hi) == 0) count -= 1;
        return count;
    }
};

inline void isolate_recurse(const ChainCounter& cc, const Rat& lo, const Rat& hi, int count,
                            const Rat& eps, std::vector<RationalInterval>& out) {
    if (count == 0) return;
    if (count == 1 && hi - lo <= eps) {
        out.emplace_back(lo, hi);
        return;
    }
    Rat mid = (lo + hi) / 2;
    int left = cc.in_halfopen(lo, mid);
    isolate_recurse(cc, lo, mid, left, eps, out);
    isolate_recurse(cc, mid, hi, count - left, eps, out);
}

}  // namespace detail

// Pairwise-disjoint half-open intervals of width <= eps, each containing
// exactly one real root of p, jointly covering all real roots.
inline std::vector<RationalInterval> isolate_roots(const IntPoly& p, const Rat& eps) {
    if (eps <= 0) throw validation_error("isolate_roots requires eps > 0");
    if (p.degree() < 1) return {};
    detail::ChainCounter cc{sturm_chain(p), &p};
    detail::require_squarefree(cc.chain);
    // Cauchy bound: |root| < 1 + max |c_i| / |lc|  <=  1 + max |c_i| when rounded up.
    Int hmax = 0;
    for (size_t i = 0; i + 1 < p.c.size(); ++i) hmax = std::max(hmax, abs_int(p.c[i]));
    Rat bound = Rat(1) + Rat(hmax, abs_int(p.leading()));
    std::vector<RationalInterval> out;
    int total = cc.in_halfopen(-bound, bound);
    detail::isolate_recurse(cc, -bound, bound, total, eps, out);
    return out;
}

inline std::vector<RationalInterval> isolate_roots(const MonicIntPoly& p, const Rat& eps) {
    return isolate_roots(p.to_int_poly(), eps);
}

}  // namespace algint
