#pragma once

#include <string>
#include <utility>
#include <vector>

#include "factdual/prime_fn.hpp"

namespace factdual {

// Full factorization (prime, exponent), primes ascending. Trial division; n >= 1.
std::vector<std::pair<u64, int>> factorize(u64 n);

// 1 if n = p^a (a >= 1), else 0.
int chi_prime_power(u64 n);

// k-th largest / k-th smallest *distinct* prime of n; 0 when omega(n) < k.
u64 kth_largest_prime(u64 n, int k);
u64 kth_smallest_prime(u64 n, int k);

// Divisor-side duality sums over d | n. All exact (i64).
//
// dual_sum_largest:  sum over squarefree d | n, omega(d) >= k, of mu(d) f(P_k(d))
//                    = (-1)^k C(omega(n)-1, k-1) f(p_1(n))        [n > 1]
// dual_sum_smallest: same with f(p_k(d)), dual side
//                    = (-1)^k C(omega(n)-1, k-1) f(P_1(n))
// inv_sum_smallest_side:  sum over d | n of mu(d) C(omega(d)-1, k-1) f(P_1(d))
//                    = (-1)^k f(p_k(n))   [k-th smallest comes out]
// inv_sum_second_largest: sum over d | n of mu(d) C(omega(d)-1, k-1) f(p_1(d))
//                    = (-1)^k f(P_k(n))   [k = 2 gives the second largest]
// (k = 1 reduces the first pair to the classical smallest<->largest dual sums.)
i64 dual_sum_largest(u64 n, int k, const PrimeFn& f);
i64 dual_sum_smallest(u64 n, int k, const PrimeFn& f);
i64 inv_sum_smallest_side(u64 n, int k, const PrimeFn& f);
i64 inv_sum_second_largest(u64 n, int k, const PrimeFn& f);

// sum over d | n of mu(d) omega(d); equals -chi_prime_power(n) for n > 1.
i64 mobius_omega_divisor_sum(u64 n);
// sum over d | n of chi_prime_power(d) mu(n/d); equals -mu(n) omega(n).
i64 mobius_omega_inverse_sum(u64 n);

// One failed check. identity ids use the CLI grammar names ("1.3".."2.10").
struct IdentityReport {
    std::string identity;
    u64 n = 0;
    int k = 0;
    std::string fn;
    i64 lhs = 0;
    i64 rhs = 0;
};

struct VerifyOptions {
    int k_max = 0;  // 0 = every k up to omega(n)+1; otherwise an additional cap
    std::vector<PrimeFn> fns;   // empty = default battery (id, one, res(3,1), res(4,3), rand 1..3)
    std::size_t max_failures = 32;
};

struct VerifyResult {
    u64 checked = 0;  // (n, identity, k, fn) combinations evaluated
    std::vector<IdentityReport> failures;
    bool ok() const { return failures.empty(); }
};

// Exhaustively check every identity for all 2 <= n <= max_n. The identity set:
// 1.3  smallest-side sum, k = 1        1.4  largest-side sum, k = 1
// 1.9  largest-side sum, general k     1.10 smallest-side sum, general k
// 1.11 inverse sum -> f(p_k(n))        1.12 inverse sum -> f(P_k(n))
// 1.13 = 1.12 at k = 2                 2.9  mu*omega divisor sum
// 2.10 mu*omega inverse sum
VerifyResult verify_identities(u64 max_n, const VerifyOptions& opts);

// Names accepted by the CLI --identity flag (plus "all").
std::vector<std::string> identity_names();

// lhs (divisor sum) and rhs (closed form) of one named identity at (n, k, f).
// k is ignored by identities that fix it (1.3, 1.4, 1.13, 2.9, 2.10).
std::pair<i64, i64> identity_sides(const std::string& identity, u64 n, int k, const PrimeFn& f);

}  // namespace factdual
