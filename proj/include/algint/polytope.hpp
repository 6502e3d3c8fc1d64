#pragma once

#include "algint/errors.hpp"
#include "algint/rational.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

namespace algint {

using RatVec = std::vector<Rat>;

// Box-and-slab region {||p||_inf <= 1} cap {|c_w + w.p| <= 1} carrying an
// |c_v + v.p| objective. With w = (t, t^2, ...), c_w = xi t^n this is
// D_n(xi, t); with c_w = 0 it is G_m(t).
struct SlabBoxPolytope {
    int dim;
    RatVec slab_normal;       // w
    Rat slab_offset;          // c_w
    RatVec objective_gradient;  // v
    Rat objective_offset;     // c_v

    SlabBoxPolytope(int d, RatVec w, Rat cw, RatVec v, Rat cv)
        : dim(d),
          slab_normal(std::move(w)),
          slab_offset(std::move(cw)),
          objective_gradient(std::move(v)),
          objective_offset(std::move(cv)) {
        if (dim < 1) throw validation_error("SlabBoxPolytope requires dim >= 1");
        if (static_cast<int>(slab_normal.size()) != dim ||
            static_cast<int>(objective_gradient.size()) != dim)
            throw validation_error("SlabBoxPolytope vector length must equal dim");
    }
};

namespace polytope_detail {

struct Halfspace {
    RatVec a;  // a . x <= b
    Rat b;
};

inline Rat dot(const RatVec& a, const RatVec& x) {
    Rat s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * x[i];
    return s;
}

inline bool is_zero_vec(const RatVec& a) {
    for (const Rat& ai : a)
        if (ai != 0) return false;
    return true;
}

// Region halfspaces; returns nullopt when a degenerate constraint
// (0 . x <= b with b < 0) makes the region empty.
inline std::optional<std::vector<Halfspace>> region_halfspaces(const SlabBoxPolytope& P) {
    std::vector<Halfspace> hs;
    int d = P.dim;
    for (int i = 0; i < d; ++i) {
        RatVec e(static_cast<size_t>(d), Rat(0));
        e[static_cast<size_t>(i)] = 1;
        hs.push_back({e, Rat(1)});
        e[static_cast<size_t>(i)] = -1;
        hs.push_back({std::move(e), Rat(1)});
    }
    if (is_zero_vec(P.slab_normal)) {
        if (abs_rat(P.slab_offset) > 1) return std::nullopt;
    } else {
        RatVec w = P.slab_normal;
        hs.push_back({w, Rat(1) - P.slab_offset});
        for (Rat& wi : w) wi = -wi;
        hs.push_back({std::move(w), Rat(1) + P.slab_offset});
    }
    return hs;
}

// Solve the square system a_i . x = b_i by exact Gaussian elimination.
inline std::optional<RatVec> solve_square(std::vector<RatVec> m, RatVec rhs) {
    size_t d = rhs.size();
    for (size_t col = 0; col < d; ++col) {
        size_t piv = col;
        while (piv < d && m[piv][col] == 0) ++piv;
        if (piv == d) return std::nullopt;
        std::swap(m[piv], m[col]);
        std::swap(rhs[piv], rhs[col]);
        for (size_t r = 0; r < d; ++r) {
            if (r == col || m[r][col] == 0) continue;
            Rat f = m[r][col] / m[col][col];
            for (size_t c = col; c < d; ++c) m[r][c] -= f * m[col][c];
            rhs[r] -= f * rhs[col];
        }
    }
    RatVec x(d);
    for (size_t i = 0; i < d; ++i) x[i] = rhs[i] / m[i][i];
    return x;
}

// Rank of the affine hull direction space of the given points.
inline int affine_rank(const std::vector<RatVec>& pts, const std::vector<int>& idx) {
    if (idx.size() <= 1) return 0;
    std::vector<RatVec> rows;
    const RatVec& base = pts[static_cast<size_t>(idx[0])];
    for (size_t i = 1; i < idx.size(); ++i) {
        RatVec r = pts[static_cast<size_t>(idx[i])];
        for (size_t j = 0; j < r.size(); ++j) r[j] -= base[j];
        rows.push_back(std::move(r));
    }
    size_t d = base.size();
    int rank = 0;
    size_t row = 0;
    for (size_t col = 0; col < d && row < rows.size(); ++col) {
        size_t piv = row;
        while (piv < rows.size() && rows[piv][col] == 0) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[piv], rows[row]);
        for (size_t r = row + 1; r < rows.size(); ++r) {
            if (rows[r][col] == 0) continue;
            Rat f = rows[r][col] / rows[row][col];
            for (size_t c = col; c < d; ++c) rows[r][c] -= f * rows[row][c];
        }
        ++row;
        ++rank;
    }
    return rank;
}

struct VertexSet {
    std::vector<RatVec> pts;
    // tight[h] = sorted vertex indices lying on halfspace h's boundary.
    std::vector<std::vector<int>> tight;
};

// All vertices of the H-representation: basic feasible solutions of every
// d-subset of constraint boundaries. Vertices are sorted so downstream
// triangulation is deterministic.
inline VertexSet enumerate_vertices(const std::vector<Halfspace>& hs, int dim) {
    size_t d = static_cast<size_t>(dim);
    size_t m = hs.size();
    VertexSet vs;
    if (m < d) return vs;
    std::set<RatVec> found;
    std::vector<size_t> comb(d);
    for (size_t i = 0; i < d; ++i) comb[i] = i;
    bool more = true;
    while (more) {
        std::vector<RatVec> mat;
        RatVec rhs;
        for (size_t i : comb) {
            mat.push_back(hs[i].a);
            rhs.push_back(hs[i].b);
        }
        if (auto x = solve_square(std::move(mat), std::move(rhs))) {
            bool feasible = true;
            for (const Halfspace& h : hs) {
                if (dot(h.a, *x) > h.b) {
                    feasible = false;
                    break;
                }
            }
            if (feasible) found.insert(std::move(*x));
        }
        more = false;
        for (size_t i = d; i-- > 0;) {
            if (comb[i] != i + m - d) {
                ++comb[i];
                for (size_t j = i + 1; j < d; ++j) comb[j] = comb[j - 1] + 1;
                more = true;
                break;
            }
        }
    }
    vs.pts.assign(found.begin(), found.end());
    vs.tight.assign(hs.size(), {});
    for (size_t h = 0; h < hs.size(); ++h)
        for (size_t i = 0; i < vs.pts.size(); ++i)
            if (dot(hs[h].a, vs.pts[i]) == hs[h].b) vs.tight[h].push_back(static_cast<int>(i));
    return vs;
}

using Simplex = std::vector<int>;  // vertex indices, size k+1 for a k-simplex

// Fan triangulation from the lowest-indexed vertex of each face, recursing
// through the face lattice. Valid for any convex polytope given exact
// incidence data.
inline void triangulate_face(const VertexSet& vs, const std::vector<int>& face,
                             const std::set<int>& tight_eqs, int k, size_t n_halfspaces,
                             std::vector<Simplex>& out) {
    if (static_cast<int>(face.size()) == k + 1) {
        out.push_back(face);
        return;
    }
    int base = face[0];
    std::set<std::vector<int>> seen_facets;
    for (size_t h = 0; h < n_halfspaces; ++h) {
        if (tight_eqs.count(static_cast<int>(h))) continue;
        std::vector<int> w;
        std::set_intersection(face.begin(), face.end(), vs.tight[h].begin(), vs.tight[h].end(),
                              std::back_inserter(w));
        if (static_cast<int>(w.size()) < k) continue;
        if (std::binary_search(w.begin(), w.end(), base)) continue;
        if (affine_rank(vs.pts, w) != k - 1) continue;
        if (!seen_facets.insert(w).second) continue;
        std::set<int> sub_eqs = tight_eqs;
        sub_eqs.insert(static_cast<int>(h));
        std::vector<Simplex> sub;
        triangulate_face(vs, w, sub_eqs, k - 1, n_halfspaces, sub);
        for (Simplex& s : sub) {
            s.push_back(base);
            out.push_back(std::move(s));
        }
    }
}

inline Rat det_exact(std::vector<RatVec> m) {
    size_t d = m.size();
    Rat det = 1;
    for (size_t col = 0; col < d; ++col) {
        size_t piv = col;
        while (piv < d && m[piv][col] == 0) ++piv;
        if (piv == d) return Rat(0);
        if (piv != col) {
            std::swap(m[piv], m[col]);
            det = -det;
        }
        det *= m[col][col];
        for (size_t r = col + 1; r < d; ++r) {
            if (m[r][col] == 0) continue;
            Rat f = m[r][col] / m[col][col];
            for (size_t c = col; c < d; ++c) m[r][c] -= f * m[col][c];
        }
    }
    return det;
}

inline Rat simplex_volume(const VertexSet& vs, const Simplex& s, int dim) {
    std::vector<RatVec> edges;
    const RatVec& v0 = vs.pts[static_cast<size_t>(s[0])];
    for (size_t i = 1; i < s.size(); ++i) {
        RatVec e = vs.pts[static_cast<size_t>(s[i])];
        for (size_t j = 0; j < e.size(); ++j) e[j] -= v0[j];
        edges.push_back(std::move(e));
    }
    Rat det = abs_rat(det_exact(std::move(edges)));
    Int fact = 1;
    for (int i = 2; i <= dim; ++i) fact *= i;
    return det / Rat(fact);
}

// Integral of the affine function c + g.x over the polytope cut out by hs.
// The polytope is triangulated; on a simplex the integral of an affine
// function is volume times its mean over the vertices.
inline Rat integrate_affine_over(const std::vector<Halfspace>& hs, int dim, const RatVec& g,
                                 const Rat& c) {
    VertexSet vs = enumerate_vertices(hs, dim);
    if (vs.pts.size() < static_cast<size_t>(dim) + 1) return Rat(0);
    std::vector<int> all(vs.pts.size());
    for (size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
    if (affine_rank(vs.pts, all) < dim) return Rat(0);
    std::vector<Simplex> tris;
    triangulate_face(vs, all, {}, dim, hs.size(), tris);
    Rat total = 0;
    for (const Simplex& s : tris) {
        Rat vol = simplex_volume(vs, s, dim);
        if (vol == 0) continue;
        Rat mean = 0;
        for (int vi : s) mean += c + dot(g, vs.pts[static_cast<size_t>(vi)]);
        mean /= Rat(static_cast<int>(s.size()));
        total += vol * mean;
    }
    return total;
}

}  // namespace polytope_detail

// Exact d-dimensional volume of the region.
inline Rat volume_exact(const SlabBoxPolytope& P) {
    auto hs = polytope_detail::region_halfspaces(P);
    if (!hs) return Rat(0);
    RatVec zero(static_cast<size_t>(P.dim), Rat(0));
    return polytope_detail::integrate_affine_over(*hs, P.dim, zero, Rat(1));
}

// Exact value of the integral of |c_v + v.p| over the region, rational
// end-to-end. The region is split by the hyperplane c_v + v.p = 0 and the
// single-signed affine objective is integrated on each part.
inline Rat integrate_abs_affine_exact(const SlabBoxPolytope& P) {
    if (P.dim > 6) throw validation_error("exact kernel supports dim <= 6");
    auto hs = polytope_detail::region_halfspaces(P);
    if (!hs) return Rat(0);
    const RatVec& v = P.objective_gradient;
    const Rat& cv = P.objective_offset;
    if (polytope_detail::is_zero_vec(v)) {
        RatVec zero(static_cast<size_t>(P.dim), Rat(0));
        return abs_rat(cv) * polytope_detail::integrate_affine_over(*hs, P.dim, zero, Rat(1));
    }
    // part with c_v + v.p >= 0
    std::vector<polytope_detail::Halfspace> plus = *hs;
    RatVec neg_v = v;
    for (Rat& x : neg_v) x = -x;
    plus.push_back({neg_v, cv});
    Rat result = polytope_detail::integrate_affine_over(plus, P.dim, v, cv);
    // part with c_v + v.p <= 0
    std::vector<polytope_detail::Halfspace> minus = *hs;
    minus.push_back({v, -cv});
    Rat neg_cv = -cv;
    result += polytope_detail::integrate_affine_over(minus, P.dim, neg_v, neg_cv);
    return result;
}

// --- Monte Carlo path ---

namespace polytope_detail {

struct SplitMix64 {
    uint64_t state;
    explicit SplitMix64(uint64_t seed) : state(seed) {}
    uint64_t next() {
        state += 0x9E3779B97F4A7C15ull;
        uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }
    // uniform in [-1, 1); bit-reproducible across platforms
    double sym_unit() { return 2.0 * ((next() >> 11) * 0x1.0p-53) - 1.0; }
};

}  // namespace polytope_detail

struct McEstimate {
    double value;
    double err;  // 3 * standard error * 2^d
    long samples;
};

// Uniform box sampling with slab rejection and objective averaging.
inline McEstimate integrate_abs_affine_mc(const SlabBoxPolytope& P, long samples, uint64_t seed) {
    if (samples <= 0) throw validation_error("MC budget must be positive");
    size_t d = static_cast<size_t>(P.dim);
    std::vector<double> w(d), v(d);
    for (size_t i = 0; i < d; ++i) {
        w[i] = to_double(P.slab_normal[i]);
        v[i] = to_double(P.objective_gradient[i]);
    }
    double cw = to_double(P.slab_offset);
    double cv = to_double(P.objective_offset);
    polytope_detail::SplitMix64 rng(seed);
    double sum = 0.0, sumsq = 0.0;
    std::vector<double> p(d);
    for (long s = 0; s < samples; ++s) {
        for (size_t i = 0; i < d; ++i) p[i] = rng.sym_unit();
        double slab = cw;
        for (size_t i = 0; i < d; ++i) slab += w[i] * p[i];
        double f = 0.0;
        if (std::abs(slab) <= 1.0) {
            double obj = cv;
            for (size_t i = 0; i < d; ++i) obj += v[i] * p[i];
            f = std::abs(obj);
        }
        sum += f;
        sumsq += f * f;
    }
    double n = static_cast<double>(samples);
    double mean = sum / n;
    double var = std::max(0.0, sumsq / n - mean * mean);
    double box_vol = std::ldexp(1.0, P.dim);  // 2^d
    double se = std::sqrt(var / n);
    return {mean * box_vol, 3.0 * se * box_vol, samples};
}

}  // namespace algint
