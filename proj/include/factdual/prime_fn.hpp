#pragma once

#include <string>
#include <vector>

#include "factdual/numeric.hpp"

namespace factdual {

// Integer-valued test weight f(p) evaluated at primes. Integer-valued on purpose:
// every identity over divisors then verifies in exact arithmetic, no tolerance.
// f is extended by f(0) = 0 so "absent prime" contributes nothing.
class PrimeFn {
  public:
    enum class Kind { identity, one, residue, finite_set, random_table, sqrt_window };

    static PrimeFn identity();
    static PrimeFn one();
    // indicator of p = l (mod k); requires 1 <= l < k? no: 0 <= l < k, gcd free
    static PrimeFn residue(u64 k, u64 l);
    // indicator of membership in a small explicit set
    static PrimeFn finite_set(std::vector<u64> primes);
    // seeded pseudo-random integer weights in [-8, 8], deterministic in (seed, p)
    static PrimeFn random_table(u64 seed);
    // indicator of p > sqrt(x), via exact isqrt
    static PrimeFn sqrt_window(u64 x);

    // Textual forms accepted by the CLI: id | one | res:K,L | set:P1,P2,... |
    // rand:SEED | window:X
    static PrimeFn parse(const std::string& text);

    i64 operator()(u64 p) const;
    Kind kind() const { return kind_; }
    std::string describe() const;

  private:
    PrimeFn(Kind k) : kind_(k) {}
    Kind kind_;
    u64 a_ = 0;  // residue k / seed / sqrt threshold
    u64 b_ = 0;  // residue l
    std::vector<u64> set_;
};

}  // namespace factdual
