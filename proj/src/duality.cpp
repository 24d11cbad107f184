#include "factdual/duality.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace factdual {

std::vector<std::pair<u64, int>> factorize(u64 n) {
    if (n < 1) throw std::invalid_argument("factorize: n >= 1 required");
    std::vector<std::pair<u64, int>> fs;
    for (u64 p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p != 0) continue;
        int e = 0;
        do {
            n /= p;
            ++e;
        } while (n % p == 0);
        fs.emplace_back(p, e);
    }
    if (n > 1) fs.emplace_back(n, 1);
    return fs;
}

int chi_prime_power(u64 n) {
    if (n < 2) return 0;
    return factorize(n).size() == 1 ? 1 : 0;
}

u64 kth_largest_prime(u64 n, int k) {
    if (k < 1) throw std::invalid_argument("kth_largest_prime: k >= 1 required");
    auto fs = factorize(n);
    const int r = static_cast<int>(fs.size());
    return k <= r ? fs[static_cast<std::size_t>(r - k)].first : 0;
}

u64 kth_smallest_prime(u64 n, int k) {
    if (k < 1) throw std::invalid_argument("kth_smallest_prime: k >= 1 required");
    auto fs = factorize(n);
    return k <= static_cast<int>(fs.size()) ? fs[static_cast<std::size_t>(k - 1)].first : 0;
}

namespace {

std::vector<u64> distinct_primes(u64 n) {
    std::vector<u64> ps;
    for (const auto& [p, e] : factorize(n)) ps.push_back(p);
    return ps;
}

// All four divisor sums for k = 1..K in one subset sweep over the distinct primes.
// Index [k]: dual_largest[k] = sum over squarefree d>1, omega(d)>=k of mu(d) f(P_k(d));
// inv_max[k] = sum over squarefree d>1 of mu(d) C(omega(d)-1, k-1) f(P_1(d)); etc.
struct DivisorSums {
    std::vector<i64> dual_largest, dual_smallest, inv_max, inv_min;
};

DivisorSums divisor_sums(const std::vector<u64>& ps, int K, const PrimeFn& f) {
    DivisorSums s;
    s.dual_largest.assign(static_cast<std::size_t>(K) + 1, 0);
    s.dual_smallest.assign(static_cast<std::size_t>(K) + 1, 0);
    s.inv_max.assign(static_cast<std::size_t>(K) + 1, 0);
    s.inv_min.assign(static_cast<std::size_t>(K) + 1, 0);
    const int r = static_cast<int>(ps.size());
    std::vector<u64> sel;
    sel.reserve(static_cast<std::size_t>(r));
    for (unsigned mask = 1; mask < (1u << r); ++mask) {
        sel.clear();
        for (int i = 0; i < r; ++i)
            if (mask >> i & 1u) sel.push_back(ps[static_cast<std::size_t>(i)]);
        const int sz = static_cast<int>(sel.size());
        const i64 sign = (sz & 1) ? -1 : 1;
        const i64 fmax = f(sel.back());
        const i64 fmin = f(sel.front());
        for (int k = 1; k <= K; ++k) {
            if (k <= sz) {
                s.dual_largest[static_cast<std::size_t>(k)] +=
                    sign * f(sel[static_cast<std::size_t>(sz - k)]);
                s.dual_smallest[static_cast<std::size_t>(k)] +=
                    sign * f(sel[static_cast<std::size_t>(k - 1)]);
            }
            const i64 c = binomial(sz - 1, k - 1);
            if (c != 0) {
                s.inv_max[static_cast<std::size_t>(k)] += sign * c * fmax;
                s.inv_min[static_cast<std::size_t>(k)] += sign * c * fmin;
            }
        }
    }
    return s;
}

void require_nk(u64 n, int k) {
    if (n < 2) throw std::invalid_argument("duality sums: n >= 2 required");
    if (k < 1) throw std::invalid_argument("duality sums: k >= 1 required");
}

}  // namespace

i64 dual_sum_largest(u64 n, int k, const PrimeFn& f) {
    require_nk(n, k);
    return divisor_sums(distinct_primes(n), k, f).dual_largest[static_cast<std::size_t>(k)];
}

i64 dual_sum_smallest(u64 n, int k, const PrimeFn& f) {
    require_nk(n, k);
    return divisor_sums(distinct_primes(n), k, f).dual_smallest[static_cast<std::size_t>(k)];
}

i64 inv_sum_smallest_side(u64 n, int k, const PrimeFn& f) {
    require_nk(n, k);
    return divisor_sums(distinct_primes(n), k, f).inv_max[static_cast<std::size_t>(k)];
}

i64 inv_sum_second_largest(u64 n, int k, const PrimeFn& f) {
    require_nk(n, k);
    return divisor_sums(distinct_primes(n), k, f).inv_min[static_cast<std::size_t>(k)];
}

i64 mobius_omega_divisor_sum(u64 n) {
    if (n < 1) throw std::invalid_argument("mobius_omega_divisor_sum: n >= 1 required");
    auto ps = distinct_primes(n);
    const int r = static_cast<int>(ps.size());
    i64 sum = 0;
    for (unsigned mask = 1; mask < (1u << r); ++mask) {
        const int sz = std::popcount(mask);
        sum += ((sz & 1) ? -1 : 1) * static_cast<i64>(sz);
    }
    return sum;
}

i64 mobius_omega_inverse_sum(u64 n) {
    if (n < 1) throw std::invalid_argument("mobius_omega_inverse_sum: n >= 1 required");
    const auto fs = factorize(n);
    const int r = static_cast<int>(fs.size());
    i64 sum = 0;
    for (int i = 0; i < r; ++i) {
        bool others_squarefree = true;
        for (int j = 0; j < r; ++j)
            if (j != i && fs[static_cast<std::size_t>(j)].second > 1) others_squarefree = false;
        if (!others_squarefree) continue;
        const int e = fs[static_cast<std::size_t>(i)].second;
        for (int a = 1; a <= e; ++a) {
            const int rem = e - a;
            if (rem > 1) continue;  // mu(n / p^a) = 0
            const int omega_rest = (r - 1) + (rem == 1 ? 1 : 0);
            sum += (omega_rest & 1) ? -1 : 1;
        }
    }
    return sum;
}

std::vector<std::string> identity_names() {
    return {"1.3", "1.4", "1.9", "1.10", "1.11", "1.12", "1.13", "2.9", "2.10"};
}

std::pair<i64, i64> identity_sides(const std::string& identity, u64 n, int k, const PrimeFn& f) {
    if (n < 2) throw std::invalid_argument("identity_sides: n >= 2 required");
    const i64 sgn = (k & 1) ? -1 : 1;
    const auto fs = factorize(n);
    const int omega = static_cast<int>(fs.size());
    auto fp = [&](int j) {  // f at j-th smallest distinct prime, 0 if out of range
        return (j >= 1 && j <= omega) ? f(fs[static_cast<std::size_t>(j - 1)].first) : i64{0};
    };
    auto fP = [&](int j) { return (j >= 1 && j <= omega) ? f(fs[static_cast<std::size_t>(omega - j)].first) : i64{0}; };

    if (identity == "1.3") return {dual_sum_smallest(n, 1, f), -fP(1)};
    if (identity == "1.4") return {dual_sum_largest(n, 1, f), -fp(1)};
    if (identity == "1.9")
        return {dual_sum_largest(n, k, f), sgn * binomial(omega - 1, k - 1) * fp(1)};
    if (identity == "1.10")
        return {dual_sum_smallest(n, k, f), sgn * binomial(omega - 1, k - 1) * fP(1)};
    if (identity == "1.11") return {inv_sum_smallest_side(n, k, f), sgn * fp(k)};
    if (identity == "1.12") return {inv_sum_second_largest(n, k, f), sgn * fP(k)};
    if (identity == "1.13") return {inv_sum_second_largest(n, 2, f), fP(2)};
    if (identity == "2.9") return {mobius_omega_divisor_sum(n), -chi_prime_power(n)};
    if (identity == "2.10") {
        const bool squarefree = std::all_of(fs.begin(), fs.end(), [](auto& pe) { return pe.second == 1; });
        const i64 mu = squarefree ? ((omega & 1) ? -1 : 1) : 0;
        return {mu * omega, -mobius_omega_inverse_sum(n)};
    }
    throw std::invalid_argument("identity_sides: unknown identity '" + identity + "'");
}

VerifyResult verify_identities(u64 max_n, const VerifyOptions& opts) {
    if (max_n < 2) throw std::invalid_argument("verify_identities: max_n >= 2 required");
    std::vector<PrimeFn> fns = opts.fns;
    if (fns.empty()) {
        fns = {PrimeFn::identity(),      PrimeFn::one(),
               PrimeFn::residue(3, 1),   PrimeFn::residue(4, 3),
               PrimeFn::random_table(1), PrimeFn::random_table(2),
               PrimeFn::random_table(3)};
    }

    // Smallest-prime-factor table for fast factorization of the whole range.
    std::vector<u32> spf(max_n + 1, 0);
    for (u64 i = 2; i <= max_n; ++i) {
        if (spf[i] != 0) continue;
        for (u64 j = i; j <= max_n; j += i)
            if (spf[j] == 0) spf[j] = static_cast<u32>(i);
    }

    VerifyResult result;
    auto record_failure = [&](const std::string& id, u64 n, int k, const std::string& fn, i64 lhs,
                              i64 rhs) {
        if (result.failures.size() < opts.max_failures)
            result.failures.push_back({id, n, k, fn, lhs, rhs});
    };

    std::vector<u64> ps;
    for (u64 n = 2; n <= max_n; ++n) {
        ps.clear();
        bool squarefree = true;
        int big_omega = 0;
        for (u64 m = n; m > 1;) {
            const u64 p = spf[m];
            int e = 0;
            do {
                m /= p;
                ++e;
            } while (m % p == 0);
            ps.push_back(p);
            big_omega += e;
            if (e > 1) squarefree = false;
        }
        const int omega = static_cast<int>(ps.size());
        const i64 mu = squarefree ? ((omega & 1) ? -1 : 1) : 0;
        const int K = opts.k_max > 0 ? std::min(opts.k_max, omega + 1) : omega + 1;

        // Identities 2.9 / 2.10 are f-independent.
        {
            const i64 lhs29 = mobius_omega_divisor_sum(n);
            const i64 rhs29 = -chi_prime_power(n);
            ++result.checked;
            if (lhs29 != rhs29) record_failure("2.9", n, 0, "-", lhs29, rhs29);
            const i64 lhs210 = mu * omega;
            const i64 rhs210 = -mobius_omega_inverse_sum(n);
            ++result.checked;
            if (lhs210 != rhs210) record_failure("2.10", n, 0, "-", lhs210, rhs210);
        }

        for (const PrimeFn& f : fns) {
            const std::string fname = f.describe();
            const DivisorSums sums = divisor_sums(ps, K, f);
            const i64 fp1 = f(ps.front());
            const i64 fP1 = f(ps.back());
            // k = 1 classics
            ++result.checked;
            if (sums.dual_smallest[1] != -fP1)
                record_failure("1.3", n, 1, fname, sums.dual_smallest[1], -fP1);
            ++result.checked;
            if (sums.dual_largest[1] != -fp1)
                record_failure("1.4", n, 1, fname, sums.dual_largest[1], -fp1);
            for (int k = 1; k <= K; ++k) {
                const i64 sgn = (k & 1) ? -1 : 1;
                const i64 coef = sgn * binomial(omega - 1, k - 1);
                const i64 fpk = k <= omega ? f(ps[static_cast<std::size_t>(k - 1)]) : 0;
                const i64 fPk = k <= omega ? f(ps[static_cast<std::size_t>(omega - k)]) : 0;
                const std::size_t ki = static_cast<std::size_t>(k);
                ++result.checked;
                if (sums.dual_largest[ki] != coef * fp1)
                    record_failure("1.9", n, k, fname, sums.dual_largest[ki], coef * fp1);
                ++result.checked;
                if (sums.dual_smallest[ki] != coef * fP1)
                    record_failure("1.10", n, k, fname, sums.dual_smallest[ki], coef * fP1);
                ++result.checked;
                if (sums.inv_max[ki] != sgn * fpk)
                    record_failure("1.11", n, k, fname, sums.inv_max[ki], sgn * fpk);
                ++result.checked;
                if (sums.inv_min[ki] != sgn * fPk)
                    record_failure("1.12", n, k, fname, sums.inv_min[ki], sgn * fPk);
                if (k == 2) {
                    ++result.checked;
                    if (sums.inv_min[2] != fPk)
                        record_failure("1.13", n, 2, fname, sums.inv_min[2], fPk);
                }
            }
        }
    }
    return result;
}

}  // namespace factdual
