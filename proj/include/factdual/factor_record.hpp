#pragma once

#include <vector>

#include "factdual/numeric.hpp"

namespace factdual {

// Complete multiplicative profile of a single integer n >= 1.
// Prime fields use 0 to encode "absent" (e.g. p2_strict = 0 when omega(n) < 2).
// Field widths match the on-disk dump format; n is capped at ~4.2e9 so prime
// factors always fit u32.
struct FactorRecord {
    u64 n = 0;
    i8 mu = 0;          // Moebius: 0 unless squarefree, else (-1)^omega
    u8 omega = 0;       // number of distinct prime factors
    u8 big_omega = 0;   // number of prime factors with multiplicity
    u32 spf = 0;        // smallest prime factor p(n); 0 for n = 1
    u32 lpf = 0;        // largest prime factor P(n); 0 for n = 1
    u32 p2_strict = 0;  // second largest *distinct* prime; 0 when omega < 2
    u32 p2_mult = 0;    // P(n / P(n)), counting multiplicity; 0 when big_omega < 2

    bool squarefree() const { return mu != 0; }

    bool operator==(const FactorRecord&) const = default;
};

struct FactorBlock {
    u64 lo = 0;  // inclusive
    u64 hi = 0;  // exclusive
    std::vector<FactorRecord> records;  // records[i] describes lo + i

    const FactorRecord& at(u64 n) const { return records[n - lo]; }
};

}  // namespace factdual
