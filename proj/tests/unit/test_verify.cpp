#include "algint/verify.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

using namespace algint;

namespace {

uint64_t mix(uint64_t& s) {
    s += 0x9E3779B97F4A7C15ull;
    uint64_t z = s;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

double unit_double(uint64_t& s) { return (mix(s) >> 11) * 0x1.0p-53; }

}  // namespace

TEST_CASE("jacobian n = 2 specializes to xi^2 (beta - alpha)") {
    JacobianReport r = jacobian_check({2, 1.0, {}, 0.0, 1.0});
    CHECK(r.formula == Catch::Approx(1.0).margin(1e-14));
    CHECK_FALSE(r.singular);
    CHECK(r.rel_error <= 1e-6);
}

TEST_CASE("jacobian n = 3 worked example") {
    // g(x) = x + 1: formula (1 - 0) g(0) g(1) = 2
    JacobianReport r = jacobian_check({3, 1.0, {1.0}, 0.0, 1.0});
    CHECK(r.formula == Catch::Approx(2.0).margin(1e-14));
    CHECK(r.rel_error <= 1e-6);
}

TEST_CASE("jacobian singular configuration is flagged") {
    JacobianReport r = jacobian_check({3, 1.0, {1.0}, 0.5, 0.5});
    CHECK(r.singular);
}

TEST_CASE("jacobian over seeded nonsingular configurations") {
    uint64_t seed = 12345;
    int done = 0;
    while (done < 40) {
        int n = 2 + static_cast<int>(mix(seed) % 3);
        FactorizationPoint fp;
        fp.n = n;
        fp.xi = 0.2 + unit_double(seed);
        for (int i = 0; i < n - 2; ++i) fp.b.push_back(2 * unit_double(seed) - 1);
        fp.alpha = 2 * unit_double(seed) - 1;
        fp.beta = 2 * unit_double(seed) - 1;
        JacobianReport r = jacobian_check(fp);
        if (r.singular || std::abs(r.formula) < 1e-2) continue;
        ++done;
        CHECK(r.rel_error <= 1e-5);
    }
}

TEST_CASE("diff lemma worked example d = 2, v = (1,1), eps = 1/2") {
    DiffLemmaReport r = diff_lemma_check(2, {Rat(1), Rat(1)}, Rat(1, 2), Rat(1, 2));
    // closed forms: int |x+y+1/2| = 25/8, int |x+y| = 8/3
    CHECK(r.integral_shifted == Rat(25, 8));
    CHECK(r.integral_plain == Rat(8, 3));
    CHECK(r.lower == Rat(15, 64));
    CHECK(r.upper == Rat(7, 8));
    CHECK(r.lower_ok);
    CHECK(r.upper_ok);
    CHECK_FALSE(r.equality_applicable);
}

TEST_CASE("diff lemma equality case d = 2, v = (1,0), eps = 3") {
    DiffLemmaReport r = diff_lemma_check(2, {Rat(1), Rat(0)}, Rat(3), Rat(1, 2));
    CHECK(r.equality_applicable);
    CHECK(r.equality_ok);
    CHECK(r.integral_shifted == 12);
}

TEST_CASE("diff lemma eps = 0 degenerates to zero bounds") {
    DiffLemmaReport r = diff_lemma_check(1, {Rat(1)}, Rat(0), Rat(1, 2));
    CHECK(r.integral_shifted == r.integral_plain);
    CHECK(r.lower == 0);
    CHECK(r.upper == 0);
    CHECK(r.lower_ok);
    CHECK(r.upper_ok);
}

TEST_CASE("diff lemma over seeded configurations") {
    uint64_t seed = 777;
    for (int trial = 0; trial < 40; ++trial) {
        int d = 1 + static_cast<int>(mix(seed) % 3);
        RatVec v(static_cast<size_t>(d));
        bool nonzero = false;
        for (int i = 0; i < d; ++i) {
            v[static_cast<size_t>(i)] = Rat(static_cast<long long>(mix(seed) % 17) - 8, 4);
            if (v[static_cast<size_t>(i)] != 0) nonzero = true;
        }
        if (!nonzero) v[0] = 1;
        Rat eps(1 + static_cast<long long>(mix(seed) % 24), 4);
        Rat lambda(1 + static_cast<long long>(mix(seed) % 7), 8);
        DiffLemmaReport r = diff_lemma_check(d, v, eps, lambda);
        CHECK(r.lower_ok);
        CHECK(r.upper_ok);
        // equality case must trigger exactly when eps >= sum |v_i|
        Rat vsum = 0;
        for (const Rat& vi : v) vsum += abs_rat(vi);
        CHECK(r.equality_applicable == (eps >= vsum));
        CHECK(r.equality_ok);
    }
}

TEST_CASE("section check: unit square") {
    SectionReport r = section_check({1, 0}, {0, 1}, 1, 1);
    CHECK(r.area_measured == Catch::Approx(4.0).margin(1e-12));
    CHECK(r.area_ok);
    CHECK(r.diam_measured == Catch::Approx(2 * std::sqrt(2.0)).margin(1e-12));
    // the printed bounds miss the measured diameter; the adjusted ones hold
    CHECK_FALSE(r.stated_bounds_bracket);
    CHECK(r.adjusted_bounds_bracket);
}

TEST_CASE("section check: orthogonal strips of different widths") {
    SectionReport r = section_check({1, 0, 0}, {0, 2, 0}, 1, 1);
    CHECK(r.area_formula == Catch::Approx(2.0).margin(1e-12));
    CHECK(r.area_ok);
}

TEST_CASE("section check: rotated square") {
    SectionReport r = section_check({1, 1}, {1, -1}, 1, 1);
    CHECK(r.area_formula == Catch::Approx(2.0).margin(1e-12));
    CHECK(r.area_ok);
}

TEST_CASE("section check rejects collinear vectors") {
    CHECK_THROWS_AS(section_check({1, 1}, {2, 2}, 1, 1), validation_error);
}

TEST_CASE("two-root measure: far interval is exactly empty") {
    // leading coefficient 1, all |a_i| <= 1: roots bounded by 1 + 1 = 2
    TwoRootQuery q{3, Rat(1), RationalInterval(Rat(1000), Rat(10001, 10)), 100000, 5};
    TwoRootEstimate e = two_root_measure(q);
    CHECK(e.hits == 0);
    CHECK(e.estimate == 0.0);
}

TEST_CASE("two-root measure: determinism across job counts") {
    TwoRootQuery q{3, Rat(1), RationalInterval(Rat(0), Rat(1, 5)), 100000, 42};
    TwoRootEstimate a = two_root_measure(q, 1);
    TwoRootEstimate b = two_root_measure(q, 2);
    CHECK(a.hits == b.hits);
    CHECK(a.estimate == b.estimate);
    CHECK(a.estimate > 0.0);
    CHECK(a.err > 0.0);
    CHECK(a.rho == 1.0);
}

TEST_CASE("two-root measure validation") {
    CHECK_THROWS_AS(
        two_root_measure({3, Rat(1), RationalInterval(Rat(0), Rat(2)), 100000, 1}),
        validation_error);
    CHECK_THROWS_AS(
        two_root_measure({3, Rat(1), RationalInterval(Rat(0), Rat(1, 5)), 10, 1}),
        validation_error);
    CHECK_THROWS_AS(
        two_root_measure({3, Rat(2), RationalInterval(Rat(0), Rat(1, 5)), 100000, 1}),
        validation_error);
}

TEST_CASE("squarefree helpers behind the two-root counter") {
    // (x-1)^2 (x+2): repeated root inside [0,2) counts as >= 2
    IntPoly p = multiply(multiply(IntPoly({Int(-1), Int(1)}), IntPoly({Int(-1), Int(1)})),
                         IntPoly({Int(2), Int(1)}));
    CHECK(verify_detail::at_least_two_roots(p, RationalInterval(Rat(0), Rat(2))));
    CHECK_FALSE(verify_detail::at_least_two_roots(p, RationalInterval(Rat(-3), Rat(0))));
    // distinct roots 1 and -2 in [-3, 2): two of them
    CHECK(verify_detail::at_least_two_roots(p, RationalInterval(Rat(-3), Rat(2))));
    // x^2 + 1: none
    CHECK_FALSE(verify_detail::at_least_two_roots(IntPoly({Int(1), Int(0), Int(1)}),
                                                  RationalInterval(Rat(-3), Rat(3))));
}
