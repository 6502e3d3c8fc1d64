#pragma once

#include "algint/density.hpp"
#include "algint/errors.hpp"
#include "algint/quadrature.hpp"
#include "algint/rational.hpp"

#include <cmath>
#include <functional>
#include <vector>

namespace algint {

enum class ThresholdKind { quadratic, general };

// Threshold abscissas of omega_n(xi, .). The quadratic kind lists the five
// explicit radicals of the omega_2 closed form; the general kind holds the
// two positive roots t1 < t2 of 1 - sum t^-k = xi t and the support
// threshold t3 solving 1 + sum t^-k = xi t, with t2 < 1/xi < t3 < 1/xi + 1.
struct ThresholdSet {
    int n;
    double xi;
    ThresholdKind kind;
    double t1 = 0, t2 = 0, t3 = 0, t4 = 0, t5 = 0;  // t4, t5 quadratic only
};

namespace limits_detail {

constexpr double kBisectTol = 1e-12;

inline double bisect(const std::function<double(double)>& f, double lo, double hi) {
    double flo = f(lo);
    for (int i = 0; i < 200 && hi - lo > kBisectTol; ++i) {
        double mid = 0.5 * (lo + hi);
        double fm = f(mid);
        if ((flo <= 0) == (fm <= 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

inline double sum_inv_powers(double t, int n_minus_1) {
    double s = 0, p = 1;
    for (int k = 1; k <= n_minus_1; ++k) {
        p /= t;
        s += p;
    }
    return s;
}

}  // namespace limits_detail

// Root of 1 + sum_{k=1}^{n-1} t^-k = xi t; omega_n(xi, t) vanishes exactly
// for |t| >= this value. Bracketed by (1/xi, 1/xi + 1).
inline double vanishing_threshold(int n, double xi) {
    if (n < 2) throw validation_error("vanishing_threshold requires n >= 2");
    if (!(xi > 0 && xi < 1)) throw validation_error("vanishing_threshold requires 0 < xi < 1");
    auto g = [n, xi](double t) { return xi * t - 1 - limits_detail::sum_inv_powers(t, n - 1); };
    return limits_detail::bisect(g, 1.0 / xi, 1.0 / xi + 1.0);
}

// Threshold set for omega_n(xi, .): explicit radicals for n = 2, bisection
// to 1e-12 otherwise. Invariants are verified before returning.
inline ThresholdSet thresholds(int n, double xi) {
    if (n == 2) {
        if (!(xi > 0 && xi <= 0.25))
            throw validation_error("quadratic thresholds require 0 < xi <= 1/4");
        Omega2Thresholds th = omega2_thresholds(xi);
        ThresholdSet set{2, xi, ThresholdKind::quadratic, th.t1, th.t2, th.t3, th.t4, th.t5};
        if (!(set.t1 < set.t2 && set.t2 <= set.t3 && set.t3 <= set.t4 && set.t4 < set.t5))
            throw validation_error("quadratic threshold ordering violated");
        return set;
    }
    if (n < 2) throw validation_error("thresholds require n >= 2");
    if (!(xi > 0 && xi < 0.125)) throw validation_error("general thresholds require 0 < xi < 1/8");
    auto F = [n, xi](double t) { return 1 - limits_detail::sum_inv_powers(t, n - 1) - xi * t; };
    auto dF = [n, xi](double t) {
        double s = 0, p = 1;
        for (int k = 1; k <= n - 1; ++k) {
            p /= t;
            s += k * p / t;
        }
        return s - xi;
    };
    // F rises from -inf, peaks, falls to -inf; dF is strictly decreasing.
    double hi = 2;
    while (dF(hi) > 0) hi *= 2;
    double peak = limits_detail::bisect(dF, 1, hi);
    if (F(peak) <= 0) throw validation_error("no thresholds: xi outside the guaranteed regime");
    double lo = peak;
    while (F(lo) > 0) lo /= 2;
    ThresholdSet set{n, xi, ThresholdKind::general};
    set.t1 = limits_detail::bisect(F, lo, peak);
    set.t2 = limits_detail::bisect([&F](double t) { return -F(t); }, peak, 1.0 / xi);
    set.t3 = vanishing_threshold(n, xi);
    if (!(set.t1 < set.t2 && set.t2 < 1.0 / xi && 1.0 / xi < set.t3 && set.t3 < 1.0 / xi + 1))
        throw validation_error("general threshold bracket invariant violated");
    return set;
}

// J_1 = integral over G_{n-1}(t) of |xi t^{n-1} + v(t).q|; equals 2^{n-1} xi
// exactly once |t| >= sqrt(5(n-1)/xi).
inline Rat j1_exact(int n, const Rat& xi, const Rat& t) {
    if (n < 3) throw validation_error("j1 requires n >= 3");
    if (!(xi > 0 && xi < 1)) throw validation_error("j1 requires 0 < xi < 1");
    SlabBoxPolytope P = build_region(n, Rat(0), t);
    P.objective_offset = xi * rat_pow(t, static_cast<unsigned>(n - 1));
    return integrate_abs_affine_exact(P);
}

inline double j1(int n, const Rat& xi, const Rat& t) { return to_double(j1_exact(n, xi, t)); }

// Exact volume of G_m(t); equals 2^m / t^m whenever |t| >= 3.
inline Rat g_measure_exact(int m, const Rat& t) {
    if (m < 1) throw validation_error("g_measure requires m >= 1");
    return volume_exact(build_region(m + 1, Rat(0), t));
}

inline double g_measure(int m, const Rat& t) { return to_double(g_measure_exact(m, t)); }

// phi_m(t) <= C(m)/t^2 for |t| >= 3, with C(m) = 2^m (9/4 + m 3^{1-m});
// follows from mes G_m(t) = 2^m/t^m and the gradient bound on G_m(t).
inline double phi_tail_envelope_constant(int m) {
    return std::ldexp(1.0, m) * (2.25 + m * std::pow(3.0, 1 - m));
}

// --- omega-to-phi convergence profile ---

struct ProfileRow {
    Rat t;
    double omega;
    double phi;
    double absdiff;
    int regime;     // 1: |t| <= k1/sqrt(xi), 2: <= k2/xi, 3: beyond
    double bound;   // xi^2 t^2, xi, or t^-2 per regime
};

struct RegimeConstants {
    double kappa1;
    double kappa2;
};

// kappa1/kappa2 are never pinned by the theory. kappa1 follows the
// J1-stick hypothesis sqrt(5(n-1)). kappa2 must place the t^-2 regime
// beyond the support edge t3 < 1/xi + 1 (omega is still of size xi just
// below t3); kappa2 = 9/8 >= xi t3 for every xi <= 1/8.
inline RegimeConstants default_regime_constants(int n) {
    return {std::sqrt(5.0 * (n - 1)), 1.125};
}

inline std::vector<ProfileRow> convergence_profile(int n, const Rat& xi,
                                                   const std::vector<Rat>& t_grid,
                                                   RegimeConstants kappa = {0, 0}) {
    if (n < 3) throw validation_error("convergence_profile requires n >= 3");
    double xid = to_double(xi);
    if (!(xid > 0 && xid < 1)) throw validation_error("convergence_profile requires 0 < xi < 1");
    if (kappa.kappa1 == 0 && kappa.kappa2 == 0) kappa = default_regime_constants(n);
    std::vector<ProfileRow> rows;
    rows.reserve(t_grid.size());
    for (const Rat& t : t_grid) {
        Rat om = omega_exact(n, xi, t);
        Rat ph = phi_exact(n - 1, t);
        double td = std::abs(to_double(t));
        int regime;
        double bound;
        if (td <= kappa.kappa1 / std::sqrt(xid)) {
            regime = 1;
            bound = xid * xid * td * td;
        } else if (td <= kappa.kappa2 / xid) {
            regime = 2;
            bound = xid;
        } else {
            regime = 3;
            bound = 1.0 / (td * td);
        }
        rows.push_back({t, to_double(om), to_double(ph), to_double(abs_rat(om - ph)), regime, bound});
    }
    return rows;
}

// --- integral difference between omega_n and phi_{n-1} ---

struct TailedIntegral {
    double value;
    double err;  // quadrature error estimates plus the analytic tail bound
};

namespace limits_detail {

inline Rat snap_up(double x, long denom = 1024) {
    return Rat(Int(static_cast<long long>(std::ceil(x * static_cast<double>(denom)))), Int(denom));
}

inline std::vector<Rat> omega_kink_candidates(int n, double xi, const Rat& upper) {
    std::vector<Rat> pts;
    auto push = [&pts, &upper](double x) {
        if (x > 0 && Rat(snap_up(x)) < upper) pts.push_back(snap_up(x));
    };
    if (n == 2) {
        Omega2Thresholds th = omega2_thresholds(xi);
        push(th.t1);
        push(th.t2);
        push(th.t3);
        push(th.t4);
        push(th.t5);
    } else {
        ThresholdSet th = thresholds(n, xi);
        push(th.t1);
        push(th.t2);
        push(th.t3);
        push(std::sqrt(5.0 * (n - 1) / xi));
    }
    push(1.0);
    return pts;
}

}  // namespace limits_detail

// integral over R of (omega_n(xi, t) - phi_{n-1}(t)) dt, computed as
// 2 [ int_0^T (omega - phi) - int_T^inf phi ] with T just above the support
// threshold t3. The phi tail beyond the quadrature cutoff is covered by the
// analytic O(t^-2) envelope and folded into the reported error.
inline TailedIntegral idiff(int n, const Rat& xi, double tol, long budget = 400000) {
    if (n < 2) throw validation_error("idiff requires n >= 2");
    double xid = to_double(xi);
    if (!(xid > 0 && xid < 0.125)) throw validation_error("idiff requires 0 < xi < 1/8");
    if (tol <= 0) throw validation_error("idiff requires tol > 0");

    double t3 = vanishing_threshold(n, xid);
    Rat T = limits_detail::snap_up(t3 + 1.0);
    auto diff = [n, &xi](const Rat& t) {
        return to_double(omega_exact(n, xi, t)) - to_double(phi_exact(n - 1, t));
    };
    IntegralResult head = adaptive_simpson_split(
        diff, Rat(0), T, limits_detail::omega_kink_candidates(n, xid, T), tol / 4, budget);

    Rat cutoff(4096);
    while (cutoff < 8 * T) cutoff *= 2;
    auto phi_f = [n](const Rat& t) { return to_double(phi_exact(n - 1, t)); };
    IntegralResult mid = adaptive_simpson_split(phi_f, T, cutoff, {}, tol / 4, budget);
    double tail = phi_tail_envelope_constant(n - 1) / to_double(cutoff);

    return {2 * (head.value - mid.value), 2 * (head.err + mid.err + tail)};
}

// gamma_m = integral over R of phi_m; quadrature to a cutoff plus the
// analytic tail bound.
inline TailedIntegral gamma_phi(int m, double tol, long budget = 400000) {
    if (m < 1) throw validation_error("gamma requires m >= 1");
    if (tol <= 0) throw validation_error("gamma requires tol > 0");
    Rat cutoff(65536);
    auto phi_f = [m](const Rat& t) { return to_double(phi_exact(m, t)); };
    IntegralResult r = adaptive_simpson_split(phi_f, Rat(0), cutoff, {Rat(1), Rat(3)}, tol / 2, budget);
    double tail = phi_tail_envelope_constant(m) / to_double(cutoff);
    return {2 * r.value, 2 * (r.err + tail)};
}

}  // namespace algint
