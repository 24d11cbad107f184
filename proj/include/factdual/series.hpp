#pragma once

#include <string>
#include <vector>

#include "factdual/prime_fn.hpp"
#include "factdual/sieve.hpp"

namespace factdual {

enum class Side { smallest, largest, second_largest };

std::string side_name(Side s);
Side parse_side(const std::string& s);

// Restricts a sum to n whose chosen prime-factor side lies in residue class l mod k.
// side second_largest uses strict P2; n with that side undefined never qualify.
struct SliceSpec {
    u64 k = 1;
    u64 l = 0;
    Side side = Side::smallest;
    bool coprime_only = false;

    bool matches(const FactorRecord& r) const;
    std::string label() const;
};

// One accumulator state: exact integer sums plus compensated harmonic sums.
struct SeriesCell {
    i64 M = 0;        // sum of mu(n)
    i64 M_omega = 0;  // sum of mu(n)*omega(n)
    CompensatedSum m;        // sum of mu(n)/n
    CompensatedSum m_omega;  // sum of mu(n)*omega(n)/n
};

struct SeriesTable {
    std::vector<u64> checkpoints;
    std::vector<SliceSpec> slices;
    std::vector<SeriesCell> totals;                // [checkpoint]
    std::vector<std::vector<SeriesCell>> sliced;   // [slice][checkpoint]
};

// Single streaming pass over [2, limit]; snapshots all sums at each checkpoint.
// Checkpoints must be increasing and <= limit.
SeriesTable accumulate_series(u64 limit, const std::vector<SliceSpec>& slices,
                              const std::vector<u64>& checkpoints,
                              const StreamOptions& opts = {});

enum class FloorWeight { unit, omega_minus_1, omega };

// Exact: sum over 1 < d <= x of mu(d) * w(d) * f(p(d)) * floor(x/d).
// Contracts (all exact, all tested):
//   weight unit          ->  -sum_{2<=n<=x} f(P(n))
//   weight omega_minus_1 ->  +sum_{2<=n<=x} f(P2(n))   (strict P2)
//   weight omega, f == 1 ->  -#{prime powers <= x}
i64 floor_weighted_sum(u64 x, const PrimeFn& f, FloorWeight w, const StreamOptions& opts = {});

struct CompValue {
    double value = 0.0;
    double err_bound = 0.0;
};

// sum over 1 < n <= x (restricted by slice) of mu(n)*omega(n)*frac(x/n).
CompValue frac_weighted_sum(u64 x, const SliceSpec& slice, const StreamOptions& opts = {});

struct ExceptionalPoint {
    u64 x = 0;
    CompValue m_omega_p;  // sum of mu(n) omega(n)/n over n <= x with p(n) = p
    CompValue m_p;        // sum of mu(n)/n, same restriction
};

// Series restricted to smallest prime factor exactly p. p must be prime.
std::vector<ExceptionalPoint> exceptional_prime_series(u64 p, u64 limit,
                                                       const std::vector<u64>& checkpoints,
                                                       const StreamOptions& opts = {});

struct KappaPair {
    u64 x = 0;
    i64 sum_P1 = 0;  // sum_{2<=n<=x} f(P(n))
    i64 sum_P2 = 0;  // sum_{2<=n<=x} f(P2(n)), strict P2
};

// Both prime-side sums at each checkpoint, one pass.
std::vector<KappaPair> kappa_pairs(u64 limit, const PrimeFn& f, const std::vector<u64>& checkpoints,
                                   const StreamOptions& opts = {});

// The single requested column of kappa_pairs (order 1 -> sum_P1, order 2 -> sum_P2).
std::vector<std::pair<u64, i64>> pside_average(u64 limit, const PrimeFn& f, int order,
                                               const std::vector<u64>& checkpoints,
                                               const StreamOptions& opts = {});

struct SqrtWindowResult {
    u64 x = 0;
    i64 sum_P1 = 0;         // sum of f(P(n)), f = indicator of (sqrt(x), x]
    i64 sum_P2 = 0;         // sum of f(P2(n)); provably 0 since P2(n) <= sqrt(n)
    i64 prime_route = 0;    // sum over sqrt(x) < p <= x of floor(x/p); equals sum_P1
};

// f is the indicator of (sqrt(x), x]; computes the record route and the prime route.
SqrtWindowResult sqrt_window_experiment(u64 x, const StreamOptions& opts = {});

// Default checkpoint grid: powers of 10 from 100 up to limit, plus limit itself.
std::vector<u64> pow10_checkpoints(u64 limit);

}  // namespace factdual
