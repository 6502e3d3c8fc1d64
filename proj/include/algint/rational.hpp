#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace algint {

// Exact arithmetic carriers used throughout the library. cpp_rational keeps
// values normalized (lowest terms, positive denominator), which is exactly
// the Rational invariant we need.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int numerator(const Rat& q) { return boost::multiprecision::numerator(q); }
inline Int denominator(const Rat& q) { return boost::multiprecision::denominator(q); }

inline double to_double(const Rat& q) { return q.convert_to<double>(); }
inline double to_double(const Int& n) { return n.convert_to<double>(); }

inline Int int_pow(Int base, unsigned exp) {
    Int r = 1;
    while (exp) {
        if (exp & 1u) r *= base;
        base *= base;
        exp >>= 1u;
    }
    return r;
}

inline Rat rat_pow(const Rat& base, unsigned exp) {
    return Rat(int_pow(numerator(base), exp), int_pow(denominator(base), exp));
}

inline Int abs_int(const Int& n) { return n < 0 ? Int(-n) : n; }
inline Rat abs_rat(const Rat& q) { return q < 0 ? Rat(-q) : q; }

// Largest integer <= q.
inline Int rat_floor(const Rat& q) {
    Int n = numerator(q), d = denominator(q);
    Int quo = n / d;
    if (n < 0 && quo * d != n) --quo;
    return quo;
}

inline Int rat_ceil(const Rat& q) { return -rat_floor(-q); }

// Parses "p", "p/q", or a plain decimal like "-0.25". Decimals convert
// exactly (no binary rounding), so CLI inputs such as 0.04 mean 1/25.
inline Rat parse_rational(std::string_view text) {
    auto fail = [&] {
        throw std::invalid_argument("invalid rational: '" + std::string(text) + "'");
    };
    if (text.empty()) fail();

    auto slash = text.find('/');
    if (slash != std::string_view::npos) {
        std::string num(text.substr(0, slash));
        std::string den(text.substr(slash + 1));
        if (num.empty() || den.empty()) fail();
        try {
            Int n(num), d(den);
            if (d == 0) fail();
            return Rat(n, d);
        } catch (const std::exception&) {
            fail();
        }
    }

    auto dot = text.find('.');
    if (dot == std::string_view::npos) {
        try {
            return Rat(Int(std::string(text)));
        } catch (const std::exception&) {
            fail();
        }
    }

    bool neg = false;
    std::string_view body = text;
    if (body.front() == '+' || body.front() == '-') {
        neg = body.front() == '-';
        body.remove_prefix(1);
        dot -= 1;
    }
    std::string digits(body.substr(0, dot));
    std::string frac(body.substr(dot + 1));
    if (digits.empty() && frac.empty()) fail();
    for (char c : digits)
        if (c < '0' || c > '9') fail();
    for (char c : frac)
        if (c < '0' || c > '9') fail();
    Int n = digits.empty() ? Int(0) : Int(digits);
    Int scale = int_pow(10, static_cast<unsigned>(frac.size()));
    n *= scale;
    if (!frac.empty()) n += Int(frac);
    if (neg) n = -n;
    return Rat(n, scale);
}

// "p" when integral, "p/q" otherwise; the exact text form used in CSV output.
inline std::string rat_to_string(const Rat& q) {
    std::string s = numerator(q).str();
    if (denominator(q) != 1) {
        s += '/';
        s += denominator(q).str();
    }
    return s;
}

}  // namespace algint
