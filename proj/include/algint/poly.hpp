#pragma once

#include "algint/errors.hpp"
#include "algint/rational.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace algint {

// Integer polynomial with arbitrary leading coefficient, stored low-to-high
// with no leading zeros (empty vector = zero polynomial). The workhorse for
// derivatives, Sturm chains and factor tests.
struct IntPoly {
    std::vector<Int> c;

    IntPoly() = default;
    explicit IntPoly(std::vector<Int> coeffs) : c(std::move(coeffs)) { normalize(); }

    void normalize() {
        while (!c.empty() && c.back() == 0) c.pop_back();
    }

    bool is_zero() const { return c.empty(); }
    // Degree of the zero polynomial reported as -1.
    int degree() const { return static_cast<int>(c.size()) - 1; }
    const Int& leading() const { return c.back(); }

    Int coeff(size_t i) const { return i < c.size() ? c[i] : Int(0); }

    friend bool operator==(const IntPoly& a, const IntPoly& b) { return a.c == b.c; }
};

// Monic integer polynomial of degree n >= 2; the minimal-polynomial carrier
// for an algebraic integer. Stores only (c_0, ..., c_{n-1}); the leading 1
// is implicit.
struct MonicIntPoly {
    int degree;
    std::vector<Int> coeffs;  // c_0 .. c_{degree-1}

    MonicIntPoly(int n, std::vector<Int> lower) : degree(n), coeffs(std::move(lower)) {
        if (degree < 2) throw validation_error("MonicIntPoly requires degree >= 2");
        if (static_cast<int>(coeffs.size()) != degree)
            throw validation_error("MonicIntPoly coefficient count must equal degree");
    }

    IntPoly to_int_poly() const {
        std::vector<Int> full = coeffs;
        full.push_back(1);
        return IntPoly(std::move(full));
    }

    friend bool operator==(const MonicIntPoly& a, const MonicIntPoly& b) {
        return a.degree == b.degree && a.coeffs == b.coeffs;
    }
};

// H(p) = max(1, max |c_i|); the implicit leading 1 participates in the max.
inline Int height(const MonicIntPoly& p) {
    Int h = 1;
    for (const Int& ci : p.coeffs) {
        Int a = abs_int(ci);
        if (a > h) h = a;
    }
    return h;
}

inline Rat eval_exact(const IntPoly& p, const Rat& x) {
    Rat v = 0;
    for (size_t i = p.c.size(); i-- > 0;) v = v * x + Rat(p.c[i]);
    return v;
}

inline Rat eval_exact(const MonicIntPoly& p, const Rat& x) {
    return eval_exact(p.to_int_poly(), x);
}

inline Int eval_at_int(const IntPoly& p, const Int& x) {
    Int v = 0;
    for (size_t i = p.c.size(); i-- > 0;) v = v * x + p.c[i];
    return v;
}

inline IntPoly derivative(const IntPoly& p) {
    std::vector<Int> d;
    for (size_t i = 1; i < p.c.size(); ++i) d.push_back(p.c[i] * Int(i));
    return IntPoly(std::move(d));
}

inline IntPoly derivative(const MonicIntPoly& p) { return derivative(p.to_int_poly()); }

inline IntPoly multiply(const IntPoly& a, const IntPoly& b) {
    if (a.is_zero() || b.is_zero()) return IntPoly();
    std::vector<Int> r(a.c.size() + b.c.size() - 1, Int(0));
    for (size_t i = 0; i < a.c.size(); ++i)
        for (size_t j = 0; j < b.c.size(); ++j) r[i + j] += a.c[i] * b.c[j];
    return IntPoly(std::move(r));
}

// Quotient of a by a *monic* divisor when the division is exact; nullopt if a
// remainder is left. Coefficients stay integral because the divisor is monic.
inline std::optional<IntPoly> divide_exact_monic(const IntPoly& a, const IntPoly& monic_b) {
    if (monic_b.is_zero() || monic_b.leading() != 1)
        throw validation_error("divide_exact_monic requires a monic divisor");
    if (a.is_zero()) return IntPoly();
    int da = a.degree(), db = monic_b.degree();
    if (da < db) return std::nullopt;
    std::vector<Int> rem = a.c;
    std::vector<Int> quo(static_cast<size_t>(da - db) + 1, Int(0));
    for (int k = da - db; k >= 0; --k) {
        Int q = rem[static_cast<size_t>(k + db)];
        quo[static_cast<size_t>(k)] = q;
        if (q != 0)
            for (int j = 0; j <= db; ++j) rem[static_cast<size_t>(k + j)] -= q * monic_b.c[static_cast<size_t>(j)];
    }
    for (int j = 0; j < db; ++j)
        if (rem[static_cast<size_t>(j)] != 0) return std::nullopt;
    return IntPoly(std::move(quo));
}

inline Int content(const IntPoly& p) {
    Int g = 0;
    for (const Int& ci : p.c) g = boost::multiprecision::gcd(g, ci);
    return g;  // 0 for the zero polynomial
}

inline IntPoly primitive_part(const IntPoly& p) {
    Int g = content(p);
    if (g == 0 || g == 1) return p;
    std::vector<Int> r = p.c;
    for (Int& ci : r) ci /= g;
    return IntPoly(std::move(r));
}

// Positive divisors of |n|, ascending. n must be nonzero.
inline std::vector<Int> positive_divisors(const Int& n) {
    Int a = abs_int(n);
    std::vector<Int> small, large;
    for (Int d = 1; d * d <= a; ++d) {
        if (a % d == 0) {
            small.push_back(d);
            Int q = a / d;
            if (q != d) large.push_back(q);
        }
    }
    small.insert(small.end(), large.rbegin(), large.rend());
    return small;
}

// Exactly the integer roots of p. Handles c_0 = 0 by stripping powers of x
// first (0 is then a root).
inline std::set<Int> integer_roots(const MonicIntPoly& p) {
    std::set<Int> roots;
    IntPoly q = p.to_int_poly();
    size_t shift = 0;
    while (shift < q.c.size() && q.c[shift] == 0) ++shift;
    if (shift > 0) {
        roots.insert(0);
        q = IntPoly(std::vector<Int>(q.c.begin() + static_cast<long>(shift), q.c.end()));
    }
    if (q.degree() < 1) return roots;
    for (const Int& d : positive_divisors(q.c[0])) {
        if (eval_at_int(q, d) == 0) roots.insert(d);
        if (eval_at_int(q, -d) == 0) roots.insert(-d);
    }
    return roots;
}

namespace detail {

inline bool has_integer_root(const MonicIntPoly& p) {
    IntPoly q = p.to_int_poly();
    if (q.c[0] == 0) return true;
    for (const Int& d : positive_divisors(q.c[0])) {
        if (eval_at_int(q, d) == 0) return true;
        if (eval_at_int(q, -d) == 0) return true;
    }
    return false;
}

// Does some monic quadratic x^2 + ux + v with integer u, v divide p?
// v must divide the (nonzero) constant term, |u| <= 2 * (1 + height).
inline bool has_monic_quadratic_factor(const MonicIntPoly& p) {
    IntPoly q = p.to_int_poly();
    Int u_bound = 2 * (1 + height(p));
    std::vector<Int> vs;
    for (const Int& d : positive_divisors(q.c[0])) {
        vs.push_back(d);
        vs.push_back(-d);
    }
    for (const Int& v : vs) {
        for (Int u = -u_bound; u <= u_bound; ++u) {
            IntPoly factor(std::vector<Int>{v, u, Int(1)});
            if (divide_exact_monic(q, factor)) return true;
        }
    }
    return false;
}

}  // namespace detail

// True iff p admits no factorization into two integer monic polynomials of
// positive degree. Supported for 2 <= degree <= 5: the rational-root test
// excludes linear factors, and for degree >= 4 a bounded search over monic
// quadratic factors covers everything else (degree 5 splits as 1+4 or 2+3,
// so linear and quadratic tests suffice).
inline bool is_irreducible(const MonicIntPoly& p) {
    if (p.degree > 5)
        throw validation_error("is_irreducible supports degree <= 5, got " +
                               std::to_string(p.degree));
    if (detail::has_integer_root(p)) return false;
    if (p.degree >= 4 && detail::has_monic_quadratic_factor(p)) return false;
    return true;
}

// Text form used by the CLI and CSV files: coefficients low-to-high,
// comma-separated, leading 1 implicit ("-2,0" is x^2 - 2).
inline std::string to_text(const MonicIntPoly& p) {
    std::string s;
    for (int i = 0; i < p.degree; ++i) {
        if (i) s += ',';
        s += p.coeffs[static_cast<size_t>(i)].str();
    }
    return s;
}

inline MonicIntPoly monic_from_text(std::string_view text) {
    std::vector<Int> coeffs;
    size_t start = 0;
    while (start <= text.size()) {
        size_t comma = text.find(',', start);
        std::string_view tok =
            text.substr(start, comma == std::string_view::npos ? comma : comma - start);
        try {
            coeffs.emplace_back(std::string(tok));
        } catch (const std::exception&) {
            throw validation_error("invalid polynomial text: '" + std::string(text) + "'");
        }
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    int n = static_cast<int>(coeffs.size());
    return MonicIntPoly(n, std::move(coeffs));
}

}  // namespace algint
