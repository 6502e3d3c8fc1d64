#pragma once

#include "algint/errors.hpp"
#include "algint/rational.hpp"

#include <string>
#include <vector>

namespace algint {

// Half-open interval [lo, hi) with exact rational endpoints. Every counting
// surface in the library uses this convention so that disjoint bins tile the
// line with no double counting.
struct RationalInterval {
    Rat lo;
    Rat hi;

    RationalInterval(Rat lo_, Rat hi_) : lo(std::move(lo_)), hi(std::move(hi_)) {
        if (!(lo < hi))
            throw validation_error("interval requires lo < hi, got [" + rat_to_string(lo) +
                                   ", " + rat_to_string(hi) + ")");
    }

    Rat length() const { return hi - lo; }
    bool contains(const Rat& x) const { return lo <= x && x < hi; }

    std::string str() const { return "[" + rat_to_string(lo) + "," + rat_to_string(hi) + ")"; }

    friend bool operator==(const RationalInterval& a, const RationalInterval& b) {
        return a.lo == b.lo && a.hi == b.hi;
    }
};

// Uniform half-open tiling of [lo, hi) by bins of the given width (the last
// bin is clipped at hi).
inline std::vector<RationalInterval> uniform_bins(const Rat& lo, const Rat& hi, const Rat& width) {
    if (width <= 0) throw validation_error("bin width must be positive");
    if (!(lo < hi)) throw validation_error("bin range requires lo < hi");
    std::vector<RationalInterval> bins;
    Rat a = lo;
    while (a < hi) {
        Rat b = a + width;
        if (b > hi) b = hi;
        bins.emplace_back(a, b);
        a = b;
    }
    return bins;
}

}  // namespace algint
