#include "algint/polytope.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <vector>

using namespace algint;

namespace {

SlabBoxPolytope box_with_objective(int d, RatVec v, Rat cv) {
    return SlabBoxPolytope(d, RatVec(static_cast<size_t>(d), Rat(0)), Rat(0), std::move(v),
                           std::move(cv));
}

uint64_t mix(uint64_t& s) {
    s += 0x9E3779B97F4A7C15ull;
    uint64_t z = s;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

Rat small_rat(uint64_t& s, int num_range, int den) {
    long long n = static_cast<long long>(mix(s) % (2 * num_range + 1)) - num_range;
    return Rat(n, den);
}

}  // namespace

TEST_CASE("d=1, no binding slab, objective |p|") {
    CHECK(integrate_abs_affine_exact(box_with_objective(1, {Rat(1)}, Rat(0))) == 1);
}

TEST_CASE("d=2, slab binding nowhere, objective |p1 + 3| (equality case)") {
    CHECK(integrate_abs_affine_exact(box_with_objective(2, {Rat(1), Rat(0)}, Rat(3))) == 12);
}

TEST_CASE("d=2, slab |2 p1| <= 1, objective |p1|") {
    SlabBoxPolytope P(2, {Rat(2), Rat(0)}, Rat(0), {Rat(1), Rat(0)}, Rat(0));
    CHECK(integrate_abs_affine_exact(P) == Rat(1, 2));
}

TEST_CASE("objective hyperplane through the region") {
    // int_{-1}^{1} |p - 1/2| dp = 5/4
    SlabBoxPolytope P(1, {Rat(0)}, Rat(0), {Rat(1)}, Rat(-1, 2));
    CHECK(integrate_abs_affine_exact(P) == Rat(5, 4));
}

TEST_CASE("volumes") {
    CHECK(volume_exact(box_with_objective(3, {Rat(0), Rat(0), Rat(0)}, Rat(0))) == 8);
    // cube cap {|x+y+z| <= 1}: 8 - 2 * 4/3
    SlabBoxPolytope P(3, {Rat(1), Rat(1), Rat(1)}, Rat(0), RatVec(3, Rat(0)), Rat(0));
    CHECK(volume_exact(P) == Rat(16, 3));
    // shifted slab entirely outside the box is empty
    SlabBoxPolytope E(2, {Rat(1), Rat(0)}, Rat(10), RatVec(2, Rat(0)), Rat(0));
    CHECK(volume_exact(E) == 0);
    // zero normal with |c_w| > 1 is empty, with |c_w| <= 1 vacuous
    SlabBoxPolytope Z1(2, RatVec(2, Rat(0)), Rat(2), RatVec(2, Rat(0)), Rat(0));
    CHECK(volume_exact(Z1) == 0);
    SlabBoxPolytope Z2(2, RatVec(2, Rat(0)), Rat(1, 2), RatVec(2, Rat(0)), Rat(0));
    CHECK(volume_exact(Z2) == 4);
}

TEST_CASE("thin and empty slabs") {
    // slab |10 + p1| <= 1 misses the box
    SlabBoxPolytope P(1, {Rat(1)}, Rat(10), {Rat(1)}, Rat(0));
    CHECK(integrate_abs_affine_exact(P) == 0);
    // slab degenerate to a single point of the box boundary
    SlabBoxPolytope Q(1, {Rat(1)}, Rat(2), {Rat(1)}, Rat(0));
    CHECK(integrate_abs_affine_exact(Q) == 0);
}

TEST_CASE("d=4 box integral of |p1| with vacuous slab") {
    RatVec v(4, Rat(0));
    v[0] = 1;
    CHECK(integrate_abs_affine_exact(box_with_objective(4, v, Rat(0))) == 8);
}

TEST_CASE("dimension cap") {
    RatVec v(7, Rat(0));
    CHECK_THROWS_AS(
        integrate_abs_affine_exact(SlabBoxPolytope(7, v, Rat(0), v, Rat(0))),
        validation_error);
}

TEST_CASE("MC zero budget is rejected") {
    CHECK_THROWS_AS(integrate_abs_affine_mc(box_with_objective(1, {Rat(1)}, Rat(0)), 0, 1),
                    validation_error);
}

TEST_CASE("MC is deterministic for a fixed seed") {
    SlabBoxPolytope P(2, {Rat(2), Rat(1)}, Rat(1, 3), {Rat(1), Rat(-1)}, Rat(1, 2));
    McEstimate a = integrate_abs_affine_mc(P, 50000, 7);
    McEstimate b = integrate_abs_affine_mc(P, 50000, 7);
    CHECK(a.value == b.value);
    CHECK(a.err == b.err);
}

TEST_CASE("MC covers the exact value within its 3-sigma bar on random instances") {
    uint64_t seed = 99;
    int covered = 0, total = 0;
    for (int trial = 0; trial < 100; ++trial) {
        int d = 1 + static_cast<int>(mix(seed) % 4);
        RatVec w(static_cast<size_t>(d)), v(static_cast<size_t>(d));
        for (int i = 0; i < d; ++i) {
            w[static_cast<size_t>(i)] = small_rat(seed, 8, 4);
            v[static_cast<size_t>(i)] = small_rat(seed, 8, 4);
        }
        SlabBoxPolytope P(d, w, small_rat(seed, 6, 4), v, small_rat(seed, 6, 4));
        Rat exact = integrate_abs_affine_exact(P);
        McEstimate mc = integrate_abs_affine_mc(P, 40000, mix(seed));
        ++total;
        if (std::abs(mc.value - to_double(exact)) <= std::max(mc.err, 1e-12)) ++covered;
    }
    CHECK(covered >= total - 1);  // >= 99% empirical coverage
}
