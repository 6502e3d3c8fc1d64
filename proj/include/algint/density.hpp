#pragma once

#include "algint/errors.hpp"
#include "algint/interval.hpp"
#include "algint/polytope.hpp"
#include "algint/quadrature.hpp"
#include "algint/rational.hpp"

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

namespace algint {

enum class Method { exact, mc };

inline const char* method_name(Method m) { return m == Method::exact ? "exact" : "mc"; }

// One evaluation of omega_n(xi, t) or phi_m(t). err is 0 for the exact path.
struct DensityPoint {
    int n;
    Rat xi;
    Rat t;
    double value;
    Method method;
    double err;
};

// D_n(xi, t) with the omega objective installed: slab normal (t, ..., t^{n-1}),
// offset xi t^n; objective gradient (1, 2t, ..., (n-1) t^{n-2}), offset
// n xi t^{n-1}. xi = 0 degenerates D_n to G_{n-1}, which unifies the phi and
// omega code paths.
inline SlabBoxPolytope build_region(int n, const Rat& xi, const Rat& t) {
    if (n < 2) throw validation_error("build_region requires n >= 2");
    if (xi < 0 || xi > 1) throw validation_error("build_region requires 0 <= xi <= 1");
    int d = n - 1;
    RatVec w(static_cast<size_t>(d)), v(static_cast<size_t>(d));
    Rat tp = 1;  // t^(k-1)
    for (int k = 1; k <= d; ++k) {
        v[static_cast<size_t>(k - 1)] = Rat(k) * tp;
        tp *= t;
        w[static_cast<size_t>(k - 1)] = tp;
    }
    Rat tn = tp * t;  // t^n
    return SlabBoxPolytope(d, std::move(w), xi * tn, std::move(v), Rat(n) * xi * tp);
}

inline Rat omega_exact(int n, const Rat& xi, const Rat& t) {
    if (n < 2) throw validation_error("omega requires n >= 2");
    if (!(xi > 0 && xi <= 1)) throw validation_error("omega requires 0 < xi <= 1");
    return integrate_abs_affine_exact(build_region(n, xi, t));
}

inline Rat phi_exact(int m, const Rat& t) {
    if (m < 1) throw validation_error("phi requires m >= 1");
    return integrate_abs_affine_exact(build_region(m + 1, Rat(0), t));
}

// Kernel dispatch shared by omega and phi. The MC path has no ambient
// randomness: a seed must be passed explicitly.
inline DensityPoint integrate_abs_affine(const SlabBoxPolytope& P, Method method,
                                         long mc_budget, uint64_t seed) {
    if (method == Method::exact) {
        Rat v = integrate_abs_affine_exact(P);
        return {P.dim + 1, Rat(0), Rat(0), to_double(v), Method::exact, 0.0};
    }
    McEstimate e = integrate_abs_affine_mc(P, mc_budget, seed);
    return {P.dim + 1, Rat(0), Rat(0), e.value, Method::mc, e.err};
}

inline DensityPoint omega(int n, const Rat& xi, const Rat& t) {
    DensityPoint p{n, xi, t, to_double(omega_exact(n, xi, t)), Method::exact, 0.0};
    return p;
}

inline DensityPoint omega_mc(int n, const Rat& xi, const Rat& t, long mc_budget, uint64_t seed) {
    if (n < 2) throw validation_error("omega requires n >= 2");
    if (!(xi > 0 && xi <= 1)) throw validation_error("omega requires 0 < xi <= 1");
    DensityPoint p = integrate_abs_affine(build_region(n, xi, t), Method::mc, mc_budget, seed);
    p.n = n;
    p.xi = xi;
    p.t = t;
    return p;
}

inline DensityPoint phi(int m, const Rat& t) {
    DensityPoint p{m, Rat(0), t, to_double(phi_exact(m, t)), Method::exact, 0.0};
    return p;
}

inline DensityPoint phi_mc(int m, const Rat& t, long mc_budget, uint64_t seed) {
    if (m < 1) throw validation_error("phi requires m >= 1");
    DensityPoint p =
        integrate_abs_affine(build_region(m + 1, Rat(0), t), Method::mc, mc_budget, seed);
    p.n = m;
    p.xi = 0;
    p.t = t;
    return p;
}

// phi_1(t) = 1 / max(1, t^2).
inline double phi1_closed(double t) { return 1.0 / std::max(1.0, t * t); }

inline Rat phi1_closed_exact(const Rat& t) {
    Rat t2 = t * t;
    return t2 <= 1 ? Rat(1) : Rat(1) / t2;
}

// Explicit thresholds of the omega_2 closed form, valid for 0 < xi <= 1/4.
struct Omega2Thresholds {
    double t1, t2, t3, t4, t5;
};

inline Omega2Thresholds omega2_thresholds(double xi) {
    if (!(xi > 0 && xi <= 0.25))
        throw validation_error("omega2 closed form requires 0 < xi <= 1/4");
    double s_plus = std::sqrt(1 + 4 * xi), s_minus = std::sqrt(1 - 4 * xi);
    return {(-1 + s_plus) / (2 * xi), (1 - s_minus) / (2 * xi), 1 / std::sqrt(xi),
            (1 + s_minus) / (2 * xi), (1 + s_plus) / (2 * xi)};
}

// Six-piece closed form for omega_2(xi, t), xi <= 1/4, with the corrected
// first piece (xi squared).
inline double omega2_closed(double xi, double t) {
    Omega2Thresholds th = omega2_thresholds(xi);
    double u = std::abs(t);
    if (u <= th.t1) return 1 + 4 * xi * xi * u * u;
    if (u <= th.t2)
        return 1 / (2 * u * u) + 0.5 + xi * (1 - 2 * u) + 2.5 * xi * xi * u * u;
    if (u <= th.t3) return 1 / (u * u) + xi * xi * u * u;
    if (u <= th.t4) return 2 * xi;
    if (u <= th.t5)
        return 1 / (2 * u * u) - 0.5 + xi * (1 + 2 * u) - 1.5 * xi * xi * u * u;
    return 0.0;
}

// Integral of t -> omega_n(xi, t) over I, clipped to the support bound
// |t| <= 1/xi + 1 (omega vanishes at t3 < 1/xi + 1). Integrand evaluations
// use the exact kernel at rational nodes. Optional breakpoints let callers
// pre-split at known kinks.
inline IntegralResult integrate_omega_over(int n, const Rat& xi, const RationalInterval& I,
                                           double tol, std::vector<Rat> breakpoints = {},
                                           long budget = 400000) {
    if (n < 2) throw validation_error("integrate_omega_over requires n >= 2");
    if (!(xi > 0 && xi <= 1)) throw validation_error("integrate_omega_over requires 0 < xi <= 1");
    if (tol <= 0) throw validation_error("integrate_omega_over requires tol > 0");
    Rat bound = Rat(1) / xi + 1;
    Rat lo = std::max(I.lo, Rat(-bound));
    Rat hi = std::min(I.hi, bound);
    if (!(lo < hi)) return {0.0, 0.0, 0};
    breakpoints.push_back(Rat(0));
    breakpoints.push_back(Rat(1));
    breakpoints.push_back(Rat(-1));
    auto f = [n, &xi](const Rat& t) { return to_double(omega_exact(n, xi, t)); };
    return adaptive_simpson_split(f, lo, hi, std::move(breakpoints), tol, budget);
}

}  // namespace algint
