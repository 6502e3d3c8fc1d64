#include "algint/limits.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

using namespace algint;

namespace {

double general_residual(int n, double xi, double t) {
    double s = 0, p = 1;
    for (int k = 1; k <= n - 1; ++k) {
        p /= t;
        s += p;
    }
    return 1 - s - xi * t;
}

}  // namespace

TEST_CASE("quadratic thresholds") {
    ThresholdSet th = thresholds(2, 0.1);
    CHECK(th.kind == ThresholdKind::quadratic);
    CHECK(th.t3 == Catch::Approx(1.0 / std::sqrt(0.1)).margin(1e-12));
    CHECK(th.t1 == Catch::Approx((-1 + std::sqrt(1.4)) / 0.2).margin(1e-12));
    CHECK(th.t5 == Catch::Approx((1 + std::sqrt(1.4)) / 0.2).margin(1e-12));
    CHECK((th.t1 < th.t2 && th.t2 <= th.t3 && th.t3 <= th.t4 && th.t4 < th.t5));
    CHECK_THROWS_AS(thresholds(2, 0.3), validation_error);
}

TEST_CASE("general thresholds for n = 3") {
    ThresholdSet th = thresholds(3, 0.01);
    CHECK(th.kind == ThresholdKind::general);
    CHECK(th.t3 > 100.0);
    CHECK(th.t3 < 101.0);
    CHECK(th.t2 < 100.0);
    CHECK(std::abs(general_residual(3, 0.01, th.t1)) <= 1e-10);
    CHECK(std::abs(general_residual(3, 0.01, th.t2)) <= 1e-10);

    // t2 = 1/xi + O(1) with a stable constant
    ThresholdSet th2 = thresholds(3, 0.005);
    CHECK(std::abs(th.t2 - 100.0) <= 3.0);
    CHECK(std::abs(th2.t2 - 200.0) <= 3.0);

    CHECK_THROWS_AS(thresholds(3, 0.2), validation_error);
}

TEST_CASE("vanishing threshold brackets and the kernel zero beyond it") {
    for (double xi : {0.04, 0.01}) {
        double t3 = vanishing_threshold(3, xi);
        CHECK(t3 > 1 / xi);
        CHECK(t3 < 1 / xi + 1);
    }
    // omega is exactly zero past t3
    double t3 = vanishing_threshold(3, 0.04);
    Rat t(static_cast<long long>(std::ceil(t3)) + 1);
    CHECK(omega_exact(3, Rat(1, 25), t) == 0);
    // and for n = 2 the general t3 coincides with the closed-form t5
    CHECK(vanishing_threshold(2, 0.1) ==
          Catch::Approx(omega2_thresholds(0.1).t5).margin(1e-10));
}

TEST_CASE("j1 sticks at 2^{n-1} xi beyond the threshold") {
    CHECK(j1_exact(3, Rat(1, 25), Rat(16)) == Rat(4, 25));    // 2^2 * 0.04
    CHECK(j1_exact(4, Rat(1, 100), Rat(39)) == Rat(2, 25));   // 2^3 * 0.01
    CHECK(j1_exact(3, Rat(1, 25), Rat(0)) == 2);              // offset vanishes at t = 0
    // threshold sqrt(5 * 2/(1/10)) = 10 exactly; equality holds from there on
    for (long long t : {10, 11, 15})
        CHECK(j1_exact(3, Rat(1, 10), Rat(t)) == Rat(2, 5));
    CHECK(j1_exact(3, Rat(1, 10), Rat(-10)) == Rat(2, 5));
    CHECK_THROWS_AS(j1_exact(2, Rat(1, 10), Rat(5)), validation_error);
}

TEST_CASE("g_measure closed form") {
    CHECK(g_measure_exact(2, Rat(4)) == Rat(1, 4));
    CHECK(g_measure_exact(2, Rat(0)) == 4);
    CHECK(g_measure_exact(3, Rat(5)) == Rat(8, 125));
    CHECK(g_measure_exact(1, Rat(2)) == 1);
    for (int m : {2, 3})
        for (Rat t : {Rat(3), Rat(4), Rat(10), Rat(7, 2)})
            CHECK(g_measure_exact(m, t) * rat_pow(t, static_cast<unsigned>(m)) ==
                  Rat(Int(1) << m));
}

TEST_CASE("phi tail envelope holds") {
    for (int m : {1, 2, 3}) {
        double c = phi_tail_envelope_constant(m);
        for (long long t : {3, 5, 10, 50}) {
            double val = to_double(phi_exact(m, Rat(t)));
            CHECK(val <= c / (static_cast<double>(t) * t) + 1e-12);
        }
    }
}

TEST_CASE("convergence profile") {
    std::vector<Rat> grid = {Rat(0), Rat(1), Rat(5), Rat(25), Rat(120)};
    auto rows = convergence_profile(3, Rat(1, 100), grid);
    REQUIRE(rows.size() == 5);
    CHECK(rows[0].absdiff == 0.0);  // omega_3(xi, 0) = phi_2(0) = 2
    CHECK(rows[0].regime == 1);
    CHECK(rows[4].regime == 3);
    CHECK(rows[4].omega == 0.0);  // 120 > t3
    double c_tail = phi_tail_envelope_constant(2);
    CHECK(rows[4].phi <= c_tail / (120.0 * 120.0));
    for (const ProfileRow& r : rows) CHECK(r.absdiff >= 0.0);
}

TEST_CASE("gamma_1 is 4") {
    TailedIntegral g = gamma_phi(1, 1e-6);
    CHECK(std::abs(g.value - 4.0) <= g.err);
    CHECK(g.err < 1e-2);
    // the remark's ratio (gamma_1 + 2^2) / gamma_1 = 2
    CHECK(std::abs((g.value + 4.0) / g.value - 2.0) <= 1e-3);
}

TEST_CASE("gamma_2 is stable under its reported error") {
    TailedIntegral g = gamma_phi(2, 1e-4);
    CHECK(g.value > 0);
    CHECK(g.err < 0.05);
}

TEST_CASE("idiff matches the n = 2 closed-form asymptotic") {
    TailedIntegral r = idiff(2, Rat(1, 25), 1e-4);
    double target = 4 - 16.0 / 3 * std::sqrt(0.04);
    CHECK(std::abs(r.value - target) <= 0.3);
    CHECK(std::abs(r.value - target) <= 10 * 0.04 + r.err);
}

TEST_CASE("idiff approaches 2^n for n = 3") {
    // the sqrt(xi) deviation carries a constant near 2^{n-1} sqrt(5(n-1)),
    // about 12.6 for n = 3, so xi = 0.04 sits roughly 2.5 below 8
    TailedIntegral r = idiff(3, Rat(1, 25), 1e-3);
    CHECK(std::abs(r.value - 8.0) <= 16.0 * std::sqrt(0.04));
    CHECK(r.value > 5.0);
}

TEST_CASE("idiff validation") {
    CHECK_THROWS_AS(idiff(2, Rat(1, 4), 1e-4), validation_error);  // xi >= 1/8
    CHECK_THROWS_AS(idiff(2, Rat(1, 25), -1.0), validation_error);
}
