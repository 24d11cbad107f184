#include <cmath>

#include "doctest.h"
#include "factdual/dickman.hpp"
#include "factdual/distribution.hpp"

using namespace factdual;

TEST_CASE("rho is 1 on [0,1] and matches closed forms") {
    auto rho = build_rho_table(6.0, 1024);
    CHECK(rho(0.0) == 1.0);
    CHECK(rho(0.5) == 1.0);
    CHECK(rho(1.0) == 1.0);
    // analytic: rho(2) = 1 - ln 2
    CHECK(std::abs(rho(2.0) - (1.0 - std::log(2.0))) < 1e-8);
    // high-resolution oracle value for rho(3)
    auto fine = build_rho_table(3.0, 16384);
    CHECK(std::abs(rho(3.0) - fine(3.0)) < 1e-6);
    CHECK(std::abs(rho(3.0) - 0.0486083883) < 1e-6);
}

TEST_CASE("rho on [1,2] equals 1 - ln(alpha) at every grid point") {
    auto rho = build_rho_table(4.0, 2048);
    for (double a = 1.0; a <= 2.0; a += 1.0 / 16.0)
        CHECK(rho(a) == doctest::Approx(1.0 - std::log(a)).epsilon(1e-8));
}

TEST_CASE("rho is positive and strictly decreasing past 1") {
    auto rho = build_rho_table(16.0, 1024);
    const u64 start = rho.inv_h;  // alpha = 1
    // Strict decrease holds down to the resolution floor of the extrapolated
    // grid; in the deep tail (true values ~1e-14) integration noise of order
    // 1e-16 can wiggle adjacent nodes, so only ask that the tail stays tiny.
    bool below_floor = false;
    for (std::size_t i = start + 1; i < rho.values.size(); ++i) {
        REQUIRE(rho.values[i] > 0.0);
        if (rho.values[i - 1] <= 1e-12) below_floor = true;
        if (!below_floor)
            REQUIRE(rho.values[i] < rho.values[i - 1]);
        else
            REQUIRE(rho.values[i] <= 2e-12);
    }
    // decay shape: rho(a) <= exp(-a(log a + log log a - 3)) on [4, 10]
    for (double a = 4.0; a <= 10.0; a += 0.5) {
        const double bound = std::exp(-a * (std::log(a) + std::log(std::log(a)) - 3.0));
        CAPTURE(a);
        CHECK(rho(a) <= bound);
    }
}

TEST_CASE("plain trapezoid converges at second order") {
    auto h6 = build_rho_table(6.0, 64, RhoMethod::trapezoid);
    auto h7 = build_rho_table(6.0, 128, RhoMethod::trapezoid);
    auto h8 = build_rho_table(6.0, 256, RhoMethod::trapezoid);
    for (double a : {2.0, 3.0, 4.5, 6.0}) {
        const double d1 = std::abs(h6(a) - h7(a));
        const double d2 = std::abs(h7(a) - h8(a));
        CAPTURE(a);
        CHECK(d1 <= 16.0 * d2);  // halving h shrinks the change by ~4x
    }
}

TEST_CASE("richardson beats plain trapezoid against the fine oracle") {
    auto oracle = build_rho_table(5.0, 32768);
    auto plain = build_rho_table(5.0, 1024, RhoMethod::trapezoid);
    auto rich = build_rho_table(5.0, 1024, RhoMethod::richardson);
    for (double a : {2.0, 3.0, 4.0, 5.0}) {
        CAPTURE(a);
        CHECK(std::abs(rich(a) - oracle(a)) < std::abs(plain(a) - oracle(a)));
        CHECK(std::abs(rich(a) - oracle(a)) < 1e-8);
    }
}

TEST_CASE("table construction guards its inputs") {
    CHECK_THROWS_AS(build_rho_table(0.5, 1024), std::invalid_argument);
    CHECK_THROWS_AS(build_rho_table(4.0, 32), std::invalid_argument);
    auto rho = build_rho_table(3.0, 128);
    CHECK_THROWS_AS(rho(-0.1), std::out_of_range);
    CHECK_THROWS_AS(rho(3.5), std::out_of_range);
}

TEST_CASE("integer smoothness bound is exact at power boundaries") {
    CHECK(smoothness_bound(1000000, Rational{2, 1}) == 1000);
    CHECK(smoothness_bound(1000000, Rational{3, 1}) == 100);
    CHECK(smoothness_bound(1000000, Rational{4, 1}) == 31);    // 31^4 < 10^6 < 32^4
    CHECK(smoothness_bound(10000000, Rational{5, 2}) == 630);  // floor(10^2.8)
    CHECK(smoothness_bound(10, Rational{1, 1}) == 10);
    CHECK(smoothness_bound(999999, Rational{2, 1}) == 999);
}

TEST_CASE("smooth ratio is exactly 1 at alpha = 1") {
    auto rho = build_rho_table(2.0, 128);
    CHECK(smooth_ratio(1000, Rational{1, 1}, rho) == 1.0);
    CHECK(rho2_empirical(1000, Rational{1, 1}) == 1.0);
}

TEST_CASE("smooth ratio near 1 at moderate scale") {
    auto rho = build_rho_table(4.0, 1024);
    const double r2 = smooth_ratio(100000, Rational{2, 1}, rho);
    CHECK(r2 > 0.8);
    CHECK(r2 < 1.25);
    // At x = 1e5 the alpha = 3 count still carries a large relative correction
    // (y = 46, so the 1/log y term is order one); the ratio is ~1.8 here and
    // only approaches 1 at larger x.
    const double r3 = smooth_ratio(100000, Rational{3, 1}, rho);
    CHECK(r3 > 0.7);
    CHECK(r3 < 2.5);
}

TEST_CASE("smooth counts stay under the exponential envelope") {
    // Psi(x, x^(1/a)) <= x * exp(-a/2) for a = 2, 3, 4 at x = 10^6
    const u64 x = 1000000;
    std::vector<u64> ys = {smoothness_bound(x, Rational{2, 1}), smoothness_bound(x, Rational{3, 1}),
                           smoothness_bound(x, Rational{4, 1})};
    auto counts = psi_batch(x, ys, {});
    for (int i = 0; i < 3; ++i) {
        const double a = 2.0 + i;
        CAPTURE(a);
        CHECK(static_cast<double>(counts[static_cast<std::size_t>(i)].value) <=
              static_cast<double>(x) * std::exp(-a / 2.0));
    }
}

TEST_CASE("empirical second-factor density sits inside the 1/alpha band") {
    for (i64 num : {2, 3, 4}) {
        const Rational alpha{num, 1};
        const double est = rho2_empirical(100000, alpha);
        const double scaled = static_cast<double>(num) * est;
        CAPTURE(num);
        CHECK(scaled > 0.1);
        CHECK(scaled < 10.0);
    }
}
