#pragma once

#include <vector>

#include "factdual/series.hpp"
#include "factdual/sieve.hpp"

namespace factdual {

struct SmoothCount {
    u64 x = 0;
    u64 y = 0;
    u64 value = 0;
};

// #{n <= x : P(n) <= y}, n = 1 included (vacuously smooth).
u64 psi(u64 x, u64 y, const StreamOptions& opts = {});

// #{n <= x : P2(n) <= y}, strict P2 with P2(n) = 1 when omega(n) < 2,
// so every prime power (and 1) qualifies for any y >= 1.
u64 psi2(u64 x, u64 y, const StreamOptions& opts = {});

// Batched variants: one streaming pass answers all thresholds at once.
std::vector<SmoothCount> psi_batch(u64 x, const std::vector<u64>& ys, const StreamOptions& opts = {});
std::vector<SmoothCount> psi2_batch(u64 x, const std::vector<u64>& ys, const StreamOptions& opts = {});

// #{2 <= n <= x : P(n)^2 | n}.
u64 repeated_lpf_count(u64 x, const StreamOptions& opts = {});

struct ResidueCountTable {
    u64 x = 0;
    u64 k = 1;
    Side side = Side::largest;        // largest or second_largest
    std::vector<u64> counts;          // index = residue 0..k-1
    u64 undefined_count = 0;          // n whose relevant factor is undefined (omega < 2 for P2)

    u64 total() const;
};

// Residue distribution of P(n) mod k or strict P2(n) mod k over 2 <= n <= x.
ResidueCountTable residue_counts(u64 x, u64 k, Side side, const StreamOptions& opts = {});

}  // namespace factdual
