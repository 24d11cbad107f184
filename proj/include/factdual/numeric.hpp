#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace factdual {

using u8 = std::uint8_t;
using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i8 = std::int8_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;

// Largest y with y*y <= x, exact for all u64.
inline u64 isqrt(u64 x) {
    if (x == 0) return 0;
    u64 y = static_cast<u64>(std::sqrt(static_cast<double>(x)));
    while (y > 0 && y > x / y) --y;
    while ((y + 1) <= x / (y + 1)) ++y;
    return y;
}

// y^e with saturation at u128 max (enough headroom: callers compare against x^d <= (2^64)^2).
inline u128 pow_sat(u64 y, unsigned e) {
    u128 r = 1;
    for (unsigned i = 0; i < e; ++i) {
        if (y != 0 && r > ~u128{0} / y) return ~u128{0};
        r *= y;
    }
    return r;
}

// Positive rational in lowest terms; used for exponents like alpha = 3/2.
struct Rational {
    i64 num = 1;
    i64 den = 1;

    Rational() = default;
    Rational(i64 n, i64 d) : num(n), den(d) {
        if (d <= 0 || n <= 0) throw std::invalid_argument("Rational: need positive num/den");
        i64 g = std::gcd(n, d);
        num /= g;
        den /= g;
    }

    double as_double() const { return static_cast<double>(num) / static_cast<double>(den); }

    // Parses "2", "3/2", or a short decimal like "1.5".
    static Rational parse(const std::string& s);
};

// Largest y >= 1 with y^num <= x^den, i.e. floor(x^(den/num)). Exact integer arithmetic.
// Requires num, den small enough that x^den fits u128 (den <= 2 for u64 x, or x bounded).
inline u64 floor_root(u64 x, i64 num, i64 den) {
    if (x == 0) return 0;
    if (num <= 0 || den <= 0) throw std::invalid_argument("floor_root: positive exponent required");
    u128 rhs = pow_sat(x, static_cast<unsigned>(den));
    if (rhs == ~u128{0}) throw std::overflow_error("floor_root: x^den overflows");
    // Initial estimate from doubles, then fix up.
    double est = std::pow(static_cast<double>(x), static_cast<double>(den) / static_cast<double>(num));
    u64 y = est < 1.0 ? 1 : static_cast<u64>(est);
    auto ok = [&](u64 v) { return pow_sat(v, static_cast<unsigned>(num)) <= rhs; };
    while (y > 1 && !ok(y)) --y;
    while (ok(y + 1)) ++y;
    return y;
}

// Binomial coefficient as signed 64-bit; 0 when out of range (j < 0, m < 0, j > m).
// Callers stay within m <= ~64 so no overflow handling is needed beyond a guard.
inline i64 binomial(i64 m, i64 j) {
    if (j < 0 || m < 0 || j > m) return 0;
    if (j > m - j) j = m - j;
    i64 r = 1;
    for (i64 i = 1; i <= j; ++i) {
        r = r * (m - j + i) / i;  // exact: product of i consecutive integers divisible by i!
    }
    return r;
}

// Compensated (Neumaier) summation with a tracked worst-case rounding bound.
struct CompensatedSum {
    double sum = 0.0;
    double comp = 0.0;
    double abs_sum = 0.0;
    u64 terms = 0;

    void add(double x) {
        double t = sum + x;
        if (std::abs(sum) >= std::abs(x))
            comp += (sum - t) + x;
        else
            comp += (x - t) + sum;
        sum = t;
        abs_sum += std::abs(x);
        ++terms;
    }

    double value() const { return sum + comp; }

    // Conservative bound on |computed - exact|: Neumaier's error is O(eps) * sum|x_i|
    // plus second-order terms; 4*eps*abs_sum covers both comfortably.
    double error_bound() const {
        constexpr double eps = std::numeric_limits<double>::epsilon();
        return 4.0 * eps * abs_sum;
    }
};

// splitmix64 finalizer; deterministic hash used for seeded pseudo-random prime weights.
inline u64 splitmix64(u64 x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace factdual
