#include <cmath>

#include "doctest.h"
#include "factdual/distribution.hpp"

using namespace factdual;

TEST_CASE("smooth counting matches enumeration") {
    CHECK(psi(10, 3) == 7);  // 1, 2, 3, 4, 6, 8, 9
    CHECK(psi(10, 10) == 10);
    CHECK(psi(100, 100) == 100);
    CHECK(psi(10, 1) == 1);
    CHECK(psi(1, 5) == 1);

    CHECK(psi2(20, 1) == 13);  // 1 plus the 12 prime powers up to 20
    CHECK(psi2(20, 20) == 20);
    CHECK(psi2(1, 1) == 1);
}

TEST_CASE("smooth counts agree with the trial-division oracle") {
    const u64 x = 5000;
    std::vector<u64> ys = {2, 3, 10, 70, 4999};
    auto p1 = psi_batch(x, ys, {});
    auto p2 = psi2_batch(x, ys, {});
    for (std::size_t i = 0; i < ys.size(); ++i) {
        u64 want1 = 1, want2 = 1;  // n = 1
        for (u64 n = 2; n <= x; ++n) {
            auto r = factor_record(n);
            if (r.lpf <= ys[i]) ++want1;
            if (r.p2_strict <= ys[i]) ++want2;
        }
        CAPTURE(ys[i]);
        CHECK(p1[i].value == want1);
        CHECK(p2[i].value == want2);
        CHECK(p1[i].x == x);
        CHECK(p1[i].y == ys[i]);
    }
}

TEST_CASE("smooth counts are monotone and ordered") {
    const u64 x = 3000;
    std::vector<u64> ys = {2, 5, 17, 100, 1500, 3000};
    auto p1 = psi_batch(x, ys, {});
    auto p2 = psi2_batch(x, ys, {});
    for (std::size_t i = 0; i < ys.size(); ++i) {
        CHECK(p2[i].value >= p1[i].value);  // P2 <= P pointwise
        if (i > 0) {
            CHECK(p1[i].value >= p1[i - 1].value);
            CHECK(p2[i].value >= p2[i - 1].value);
        }
    }
    // psi(x, y) + #{n <= x : P(n) > y} = x
    for (std::size_t i = 0; i < ys.size(); ++i) {
        u64 above = 0;
        for (u64 n = 2; n <= x; ++n)
            if (factor_record(n).lpf > ys[i]) ++above;
        CHECK(p1[i].value + above == x);
    }
}

TEST_CASE("repeated largest prime factor counter") {
    CHECK(repeated_lpf_count(10) == 3);  // 4, 8, 9
    CHECK(repeated_lpf_count(3) == 0);

    const u64 x = 20000;
    u64 brute = 0, disagree = 0;
    for (u64 n = 2; n <= x; ++n) {
        auto r = factor_record(n);
        if (n % (static_cast<u64>(r.lpf) * r.lpf) == 0) ++brute;
        if (r.p2_strict != r.p2_mult) ++disagree;
    }
    CHECK(repeated_lpf_count(x) == brute);
    // the two second-factor definitions disagree exactly where P(n) repeats
    CHECK(disagree == brute);

    CHECK_THROWS_AS(repeated_lpf_count(1), std::invalid_argument);
}

TEST_CASE("repeated largest prime density decreases with x") {
    const double d4 = static_cast<double>(repeated_lpf_count(10000)) / 1e4;
    const double d6 = static_cast<double>(repeated_lpf_count(1000000)) / 1e6;
    CHECK(d4 > d6);
}

TEST_CASE("residue counts: hand-worked table at x = 10") {
    auto t = residue_counts(10, 4, Side::largest);
    REQUIRE(t.counts.size() == 4);
    CHECK(t.counts[0] == 0);
    CHECK(t.counts[1] == 2);  // n = 5, 10
    CHECK(t.counts[2] == 3);  // n = 2, 4, 8
    CHECK(t.counts[3] == 4);  // n = 3, 6, 7, 9
    CHECK(t.undefined_count == 0);
    CHECK(t.total() == 9);  // all of 2..10

    auto t2 = residue_counts(10, 3, Side::second_largest);
    CHECK(t2.counts[2] == 2);  // n = 6, 10 have strict second factor 2
    CHECK(t2.counts[0] == 0);
    CHECK(t2.counts[1] == 0);
    CHECK(t2.undefined_count == 7);
    CHECK(t2.total() == 9);
}

TEST_CASE("residue counts conserve totals and match the oracle") {
    const u64 x = 3000;
    for (u64 k : {1, 3, 4, 5}) {
        for (Side side : {Side::largest, Side::second_largest}) {
            auto t = residue_counts(x, k, side);
            CHECK(t.total() == x - 1);
            std::vector<u64> want(k, 0);
            u64 undef = 0;
            for (u64 n = 2; n <= x; ++n) {
                auto r = factor_record(n);
                const u64 field = side == Side::largest ? r.lpf : r.p2_strict;
                if (field == 0)
                    ++undef;
                else
                    ++want[field % k];
            }
            CAPTURE(k);
            CHECK(t.undefined_count == undef);
            for (u64 l = 0; l < k; ++l) CHECK(t.counts[l] == want[l]);
        }
    }
}

TEST_CASE("residue counts reject unusable inputs") {
    CHECK_THROWS_AS(residue_counts(10, 0, Side::largest), std::invalid_argument);
    CHECK_THROWS_AS(residue_counts(1, 3, Side::largest), std::invalid_argument);
    CHECK_THROWS_AS(residue_counts(10, 3, Side::smallest), std::invalid_argument);
}

TEST_CASE("second-factor residue classes are comparably sized at scale") {
    // the two coprime classes mod 3 hold most of the mass and stay within
    // a loose factor of one another; tight tolerances live in the acceptance gate
    auto t = residue_counts(1000000, 3, Side::second_largest);
    const double c1 = static_cast<double>(t.counts[1]);
    const double c2 = static_cast<double>(t.counts[2]);
    CHECK(std::abs(c1 - c2) < 0.25 * (c1 + c2));
    CHECK(c1 + c2 > 0.6 * 1000000);
    // residue 0 collects only n whose strict second factor is exactly 3
    CHECK(t.counts[0] < c1);
    CHECK(t.counts[0] < c2);
}
