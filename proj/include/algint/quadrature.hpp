#pragma once

#include "algint/errors.hpp"
#include "algint/rational.hpp"

#include <algorithm>
#include <functional>
#include <vector>

namespace algint {

struct IntegralResult {
    double value = 0.0;
    double err = 0.0;
    long evals = 0;
};

namespace quad_detail {

struct Workspace {
    const std::function<double(const Rat&)>& f;
    long evals = 0;
    long budget;
    double err_acc = 0.0;

    double eval(const Rat& x) {
        ++evals;
        return f(x);
    }
};

// Adaptive Simpson with Richardson correction. Nodes stay exact rationals so
// exact-kernel integrands are evaluated at clean points.
inline double simpson_rec(Workspace& ws, const Rat& a, double fa, const Rat& m, double fm,
                          const Rat& b, double fb, double whole, double tol, int depth) {
    Rat lm = (a + m) / 2, rm = (m + b) / 2;
    double flm = ws.eval(lm), frm = ws.eval(rm);
    double h6 = to_double(b - a) / 12.0;
    double left = h6 * (fa + 4 * flm + fm);
    double right = h6 * (fm + 4 * frm + fb);
    double delta = left + right - whole;
    if (depth <= 0 || ws.evals > ws.budget || std::abs(delta) <= 15.0 * tol) {
        ws.err_acc += std::abs(delta) / 15.0;
        return left + right + delta / 15.0;
    }
    return simpson_rec(ws, a, fa, lm, flm, m, fm, left, tol / 2, depth - 1) +
           simpson_rec(ws, m, fm, rm, frm, b, fb, right, tol / 2, depth - 1);
}

}  // namespace quad_detail

// Integral of f over [lo, hi] with absolute-error target tol. Throws
// tolerance_error if the accumulated error estimate exceeds tol after the
// evaluation budget is spent.
inline IntegralResult adaptive_simpson(const std::function<double(const Rat&)>& f, const Rat& lo,
                                       const Rat& hi, double tol, long budget = 400000,
                                       int max_depth = 48) {
    if (tol <= 0) throw validation_error("quadrature tolerance must be positive");
    if (lo == hi) return {0.0, 0.0, 0};
    quad_detail::Workspace ws{f, 0, budget, 0.0};
    Rat mid = (lo + hi) / 2;
    double fa = ws.eval(lo), fm = ws.eval(mid), fb = ws.eval(hi);
    double whole = to_double(hi - lo) / 6.0 * (fa + 4 * fm + fb);
    double value = quad_detail::simpson_rec(ws, lo, fa, mid, fm, hi, fb, whole, tol, max_depth);
    if (ws.err_acc > tol && ws.evals > ws.budget)
        throw tolerance_error("quadrature tolerance not achieved within evaluation budget");
    return {value, ws.err_acc, ws.evals};
}

// Adaptive integration over [lo, hi] pre-split at the given interior
// breakpoints (integrand kinks); each segment receives an equal share of the
// tolerance.
inline IntegralResult adaptive_simpson_split(const std::function<double(const Rat&)>& f,
                                             const Rat& lo, const Rat& hi,
                                             std::vector<Rat> breakpoints, double tol,
                                             long budget = 400000) {
    std::vector<Rat> pts;
    pts.push_back(lo);
    std::sort(breakpoints.begin(), breakpoints.end());
    for (const Rat& b : breakpoints)
        if (lo < b && b < hi && b != pts.back()) pts.push_back(b);
    pts.push_back(hi);
    double seg_tol = tol / static_cast<double>(pts.size() - 1);
    IntegralResult acc;
    for (size_t i = 0; i + 1 < pts.size(); ++i) {
        IntegralResult r = adaptive_simpson(f, pts[i], pts[i + 1], seg_tol, budget);
        acc.value += r.value;
        acc.err += r.err;
        acc.evals += r.evals;
    }
    return acc;
}

}  // namespace algint
