#include <cmath>
#include <vector>

#include "doctest.h"
#include "factdual/series.hpp"

using namespace factdual;

namespace {

struct BruteCell {
    i64 M = 0;
    i64 M_omega = 0;
    double m = 0.0;
    double m_omega = 0.0;
};

BruteCell brute_series(u64 limit, const SliceSpec* slice) {
    BruteCell c;
    for (u64 n = 1; n <= limit; ++n) {
        auto r = factor_record(n);
        if (r.mu == 0) continue;
        if (slice && !slice->matches(r)) continue;
        const i64 mo = static_cast<i64>(r.mu) * r.omega;
        c.M += r.mu;
        c.M_omega += mo;
        c.m += static_cast<double>(r.mu) / static_cast<double>(n);
        c.m_omega += static_cast<double>(mo) / static_cast<double>(n);
    }
    return c;
}

}  // namespace

TEST_CASE("side parsing accepts the short aliases") {
    CHECK(parse_side("smallest") == Side::smallest);
    CHECK(parse_side("p") == Side::smallest);
    CHECK(parse_side("largest") == Side::largest);
    CHECK(parse_side("P") == Side::largest);
    CHECK(parse_side("second_largest") == Side::second_largest);
    CHECK(parse_side("P2") == Side::second_largest);
    CHECK_THROWS_AS(parse_side("middle"), std::invalid_argument);
    CHECK(side_name(Side::largest) == "largest");
}

TEST_CASE("hand-computed totals at x = 10") {
    auto t = accumulate_series(10, {}, {10});
    REQUIRE(t.totals.size() == 1);
    CHECK(t.totals[0].M == -1);
    CHECK(t.totals[0].M_omega == 0);
    CHECK(t.totals[0].m.value() == doctest::Approx(19.0 / 210.0).epsilon(1e-14));
    CHECK(t.totals[0].m_omega.value() == doctest::Approx(-9.0 / 14.0).epsilon(1e-14));
}

TEST_CASE("hand-computed slice cells at x = 10") {
    SliceSpec s31{3, 1, Side::smallest, false};
    SliceSpec s32{3, 2, Side::smallest, false};
    auto t = accumulate_series(10, {s31, s32}, {10});
    REQUIRE(t.sliced.size() == 2);
    // smallest prime factor = 1 mod 3: only n = 7 below 10
    CHECK(t.sliced[0][0].M == -1);
    CHECK(t.sliced[0][0].m.value() == doctest::Approx(-1.0 / 7.0).epsilon(1e-14));
    // smallest prime factor = 2 mod 3: n = 2, 5, 6, 10
    CHECK(t.sliced[1][0].M == 0);
    CHECK(t.sliced[1][0].M_omega == 2);
    CHECK(t.sliced[1][0].m.value() == doctest::Approx(-13.0 / 30.0).epsilon(1e-14));
}

TEST_CASE("series accumulation matches the brute force pass on every side") {
    std::vector<SliceSpec> slices = {
        {3, 1, Side::smallest, true},
        {4, 3, Side::smallest, true},
        {3, 2, Side::largest, false},
        {4, 1, Side::second_largest, false},
    };
    std::vector<u64> cps = {100, 1000, 3000};
    StreamOptions opts;
    opts.block_size = 512;
    auto t = accumulate_series(3000, slices, cps, opts);
    REQUIRE(t.totals.size() == 3);

    for (std::size_t c = 0; c < cps.size(); ++c) {
        auto want = brute_series(cps[c], nullptr);
        CAPTURE(cps[c]);
        CHECK(t.totals[c].M == want.M);
        CHECK(t.totals[c].M_omega == want.M_omega);
        CHECK(t.totals[c].m.value() == doctest::Approx(want.m).epsilon(1e-12));
        CHECK(t.totals[c].m_omega.value() == doctest::Approx(want.m_omega).epsilon(1e-12));
        for (std::size_t s = 0; s < slices.size(); ++s) {
            auto ws = brute_series(cps[c], &slices[s]);
            CAPTURE(s);
            CHECK(t.sliced[s][c].M == ws.M);
            CHECK(t.sliced[s][c].M_omega == ws.M_omega);
            CHECK(t.sliced[s][c].m.value() == doctest::Approx(ws.m).epsilon(1e-12));
        }
    }
}

TEST_CASE("series pass is bitwise deterministic across worker counts") {
    std::vector<SliceSpec> slices = {{3, 1, Side::smallest, true}};
    std::vector<u64> cps = {100, 10000, 50000};
    StreamOptions one;
    one.block_size = 700;
    one.workers = 1;
    StreamOptions many;
    many.block_size = 700;
    many.workers = 3;
    auto a = accumulate_series(50000, slices, cps, one);
    auto b = accumulate_series(50000, slices, cps, many);
    for (std::size_t c = 0; c < cps.size(); ++c) {
        CHECK(a.totals[c].M == b.totals[c].M);
        CHECK(a.totals[c].m.value() == b.totals[c].m.value());  // exact bit equality
        CHECK(a.totals[c].m_omega.value() == b.totals[c].m_omega.value());
        CHECK(a.sliced[0][c].m.value() == b.sliced[0][c].m.value());
    }
}

TEST_CASE("series input validation") {
    CHECK_THROWS_AS(accumulate_series(1, {}, {}), std::invalid_argument);
    CHECK_THROWS_AS(accumulate_series(100, {{0, 0, Side::smallest, false}}, {}),
                    std::invalid_argument);
    CHECK_THROWS_AS(accumulate_series(100, {{4, 5, Side::smallest, false}}, {}),
                    std::invalid_argument);
    CHECK_THROWS_AS(accumulate_series(100, {{4, 2, Side::smallest, true}}, {}),
                    std::invalid_argument);  // coprime_only with gcd(2,4) = 2
    CHECK_THROWS_AS(accumulate_series(100, {}, {10, 10}), std::invalid_argument);
    CHECK_THROWS_AS(accumulate_series(100, {}, {200}), std::invalid_argument);
}

TEST_CASE("floor weighted sums: exact identities at x = 10") {
    auto id = PrimeFn::identity();
    auto one = PrimeFn::one();
    CHECK(floor_weighted_sum(10, id, FloorWeight::unit) == -32);
    CHECK(floor_weighted_sum(10, id, FloorWeight::omega_minus_1) == 4);
    CHECK(floor_weighted_sum(10, one, FloorWeight::omega) == -7);  // 7 prime powers <= 10
}

TEST_CASE("floor weighted sums: aggregated identities hold exactly up to 2000") {
    std::vector<PrimeFn> fns = {PrimeFn::identity(), PrimeFn::one(), PrimeFn::residue(4, 3),
                                PrimeFn::random_table(5)};
    for (u64 x : {10, 100, 541, 1000, 2000}) {
        i64 sum_P1 = 0, sum_P2 = 0, prime_powers = 0;
        for (u64 n = 2; n <= x; ++n)
            if (factor_record(n).omega == 1) ++prime_powers;
        for (const auto& f : fns) {
            sum_P1 = 0;
            sum_P2 = 0;
            for (u64 n = 2; n <= x; ++n) {
                auto r = factor_record(n);
                sum_P1 += f(r.lpf);
                sum_P2 += f(r.p2_strict);
            }
            CAPTURE(x);
            CHECK(floor_weighted_sum(x, f, FloorWeight::unit) == -sum_P1);
            CHECK(floor_weighted_sum(x, f, FloorWeight::omega_minus_1) == sum_P2);
        }
        CHECK(floor_weighted_sum(x, PrimeFn::one(), FloorWeight::omega) == -prime_powers);
    }
}

TEST_CASE("fractional-part weighted sum") {
    SliceSpec all{1, 0, Side::smallest, false};
    auto v = frac_weighted_sum(10, all);
    CHECK(v.value == doctest::Approx(4.0 / 7.0).epsilon(1e-14));
    CHECK(v.err_bound < 1e-12);

    // brute check at a larger x with a nontrivial slice
    SliceSpec s{3, 2, Side::smallest, true};
    double brute = 0.0;
    const u64 x = 4000;
    for (u64 n = 2; n <= x; ++n) {
        auto r = factor_record(n);
        if (r.mu == 0 || !s.matches(r)) continue;
        brute += static_cast<double>(r.mu) * r.omega * (static_cast<double>(x % n) / n);
    }
    CHECK(frac_weighted_sum(x, s).value == doctest::Approx(brute).epsilon(1e-10));
}

TEST_CASE("slicing completeness: residues partition the sums over n >= 2") {
    const u64 k = 4;
    std::vector<SliceSpec> slices;
    for (u64 l = 0; l < k; ++l) slices.push_back({k, l, Side::smallest, false});
    const u64 x = 20000;
    auto t = accumulate_series(x, slices, {x});
    i64 M_sum = 0, Mo_sum = 0;
    double m_sum = 0.0, mo_sum = 0.0;
    for (u64 l = 0; l < k; ++l) {
        M_sum += t.sliced[l][0].M;
        Mo_sum += t.sliced[l][0].M_omega;
        m_sum += t.sliced[l][0].m.value();
        mo_sum += t.sliced[l][0].m_omega.value();
    }
    // totals carry the n = 1 term that no slice can claim
    CHECK(M_sum == t.totals[0].M - 1);
    CHECK(Mo_sum == t.totals[0].M_omega);
    CHECK(m_sum == doctest::Approx(t.totals[0].m.value() - 1.0).epsilon(1e-12));
    CHECK(mo_sum == doctest::Approx(t.totals[0].m_omega.value()).epsilon(1e-12));
}

TEST_CASE("floor plus fractional part reassembles the harmonic sum") {
    // sum mu(n) omega(n) f(p(n)) (x/n) = floor part + fractional part,
    // with f an indicator of a residue class of the smallest prime factor.
    struct Case {
        u64 x;
        u64 k;
        u64 l;
    };
    for (auto [x, k, l] : {Case{10, 1, 0}, Case{4000, 1, 0}, Case{4000, 3, 1}}) {
        auto f = k == 1 ? PrimeFn::one() : PrimeFn::residue(k, l);
        SliceSpec slice{k, l, Side::smallest, false};
        auto t = accumulate_series(x, {slice}, {x});
        const double harmonic = static_cast<double>(x) * t.sliced[0][0].m_omega.value();
        const double floor_part =
            static_cast<double>(floor_weighted_sum(x, f, FloorWeight::omega));
        const double frac_part = frac_weighted_sum(x, slice).value;
        CAPTURE(x);
        CAPTURE(k);
        CHECK(harmonic ==
              doctest::Approx(floor_part + frac_part).epsilon(1e-9));
    }
}

TEST_CASE("exceptional prime series") {
    auto pts = exceptional_prime_series(2, 10, {10});
    REQUIRE(pts.size() == 1);
    CHECK(pts[0].x == 10);
    CHECK(pts[0].m_omega_p.value == doctest::Approx(1.0 / 30.0).epsilon(1e-14));
    CHECK(pts[0].m_p.value == doctest::Approx(-7.0 / 30.0).epsilon(1e-14));

    auto p7 = exceptional_prime_series(7, 10, {10});
    CHECK(p7[0].m_omega_p.value == doctest::Approx(-1.0 / 7.0).epsilon(1e-14));
    CHECK(p7[0].m_p.value == doctest::Approx(-1.0 / 7.0).epsilon(1e-14));

    CHECK_THROWS_AS(exceptional_prime_series(6, 100, {100}), std::domain_error);
    CHECK_THROWS_AS(exceptional_prime_series(8, 100, {100}), std::domain_error);

    // brute comparison for p = 3 at two checkpoints
    auto p3 = exceptional_prime_series(3, 2000, {100, 2000});
    for (std::size_t i = 0; i < 2; ++i) {
        const u64 x = p3[i].x;
        double bo = 0.0, bm = 0.0;
        for (u64 n = 2; n <= x; ++n) {
            auto r = factor_record(n);
            if (r.mu == 0 || r.spf != 3) continue;
            bo += static_cast<double>(r.mu) * r.omega / static_cast<double>(n);
            bm += static_cast<double>(r.mu) / static_cast<double>(n);
        }
        CHECK(p3[i].m_omega_p.value == doctest::Approx(bo).epsilon(1e-12));
        CHECK(p3[i].m_p.value == doctest::Approx(bm).epsilon(1e-12));
    }
}

TEST_CASE("kappa pairs and projected averages") {
    auto id = PrimeFn::identity();
    auto kp = kappa_pairs(10, id, {10});
    REQUIRE(kp.size() == 1);
    CHECK(kp[0].sum_P1 == 32);
    CHECK(kp[0].sum_P2 == 4);

    auto res = PrimeFn::residue(4, 3);
    auto proj = pside_average(10, res, 1, {10});
    CHECK(proj[0].second == 4);  // n = 3, 6, 7, 9 have largest prime = 3 mod 4

    CHECK_THROWS_AS(pside_average(10, id, 3, {10}), std::invalid_argument);

    // checkpoints snapshot mid-pass correctly
    auto kp2 = kappa_pairs(1000, id, {10, 100, 1000});
    REQUIRE(kp2.size() == 3);
    CHECK(kp2[0].sum_P1 == 32);
    i64 want = 0;
    for (u64 n = 2; n <= 100; ++n) want += factor_record(n).lpf;
    CHECK(kp2[1].sum_P1 == want);
}

TEST_CASE("square root window: both routes agree and the second side vanishes") {
    auto r = sqrt_window_experiment(100);
    CHECK(r.sum_P1 == 54);
    CHECK(r.prime_route == 54);
    CHECK(r.sum_P2 == 0);

    for (u64 x : {50, 1000, 9999, 10000}) {
        auto w = sqrt_window_experiment(x);
        CAPTURE(x);
        CHECK(w.sum_P1 == w.prime_route);
        CHECK(w.sum_P2 == 0);
    }
}

TEST_CASE("default checkpoint grids") {
    CHECK(pow10_checkpoints(12345) == std::vector<u64>{100, 1000, 10000, 12345});
    CHECK(pow10_checkpoints(1000) == std::vector<u64>{100, 1000});
    CHECK(pow10_checkpoints(50) == std::vector<u64>{50});
    CHECK(pow10_checkpoints(100000000).back() == 100000000);
}
