#include "factdual/series.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "factdual/duality.hpp"

namespace factdual {

std::string side_name(Side s) {
    switch (s) {
        case Side::smallest: return "smallest";
        case Side::largest: return "largest";
        case Side::second_largest: return "second_largest";
    }
    return "?";
}

Side parse_side(const std::string& s) {
    if (s == "smallest" || s == "p" || s == "spf") return Side::smallest;
    if (s == "largest" || s == "P" || s == "lpf") return Side::largest;
    if (s == "second_largest" || s == "p2" || s == "P2") return Side::second_largest;
    throw std::invalid_argument("parse_side: unknown side '" + s + "'");
}

bool SliceSpec::matches(const FactorRecord& r) const {
    u64 field = 0;
    switch (side) {
        case Side::smallest: field = r.spf; break;
        case Side::largest: field = r.lpf; break;
        case Side::second_largest: field = r.p2_strict; break;
    }
    if (field == 0) return false;  // undefined side never matches
    return field % k == l;
}

std::string SliceSpec::label() const {
    std::string s = side_name(side) + ":" + std::to_string(k) + "," + std::to_string(l);
    if (coprime_only) s += ",coprime";
    return s;
}

namespace {

void check_slice(const SliceSpec& sl) {
    if (sl.k < 1) throw std::invalid_argument("SliceSpec: modulus k >= 1 required");
    if (sl.l >= sl.k) throw std::invalid_argument("SliceSpec: residue l must satisfy 0 <= l < k");
    if (sl.coprime_only && std::gcd(sl.l, sl.k) != 1)
        throw std::invalid_argument("SliceSpec: coprime_only requires gcd(l, k) = 1");
}

void check_checkpoints(u64 limit, const std::vector<u64>& cps) {
    u64 prev = 0;
    for (u64 x : cps) {
        if (x < 2) throw std::invalid_argument("checkpoints must be >= 2");
        if (x <= prev) throw std::invalid_argument("checkpoints must be strictly increasing");
        prev = x;
    }
    if (!cps.empty() && cps.back() > limit)
        throw std::invalid_argument("checkpoint beyond limit");
}

}  // namespace

SeriesTable accumulate_series(u64 limit, const std::vector<SliceSpec>& slices,
                              const std::vector<u64>& checkpoints, const StreamOptions& opts) {
    if (limit < 2) throw std::invalid_argument("accumulate_series: limit >= 2 required");
    for (const auto& sl : slices) check_slice(sl);
    check_checkpoints(limit, checkpoints);

    SeriesTable table;
    table.checkpoints = checkpoints;
    table.slices = slices;
    table.sliced.resize(slices.size());
    table.totals.reserve(checkpoints.size());
    for (auto& v : table.sliced) v.reserve(checkpoints.size());

    SeriesCell total;
    // n = 1 belongs to the unsliced sums (mu(1) = 1, omega(1) = 0) but has no
    // prime-factor side, so it never enters a slice.
    total.M = 1;
    total.m.add(1.0);
    std::vector<SeriesCell> cells(slices.size());
    std::size_t next_cp = 0;

    stream_blocks(limit, opts, [&](const FactorBlock& block) {
        for (const FactorRecord& r : block.records) {
            if (r.mu != 0) {
                const i64 mu = r.mu;
                const i64 mo = mu * static_cast<i64>(r.omega);
                const double inv = 1.0 / static_cast<double>(r.n);
                total.M += mu;
                total.M_omega += mo;
                total.m.add(static_cast<double>(mu) * inv);
                total.m_omega.add(static_cast<double>(mo) * inv);
                for (std::size_t s = 0; s < cells.size(); ++s) {
                    if (!table.slices[s].matches(r)) continue;
                    SeriesCell& c = cells[s];
                    c.M += mu;
                    c.M_omega += mo;
                    c.m.add(static_cast<double>(mu) * inv);
                    c.m_omega.add(static_cast<double>(mo) * inv);
                }
            }
            if (next_cp < table.checkpoints.size() && r.n == table.checkpoints[next_cp]) {
                table.totals.push_back(total);
                for (std::size_t s = 0; s < cells.size(); ++s) table.sliced[s].push_back(cells[s]);
                ++next_cp;
            }
        }
    });
    return table;
}

i64 floor_weighted_sum(u64 x, const PrimeFn& f, FloorWeight w, const StreamOptions& opts) {
    if (x < 2) throw std::invalid_argument("floor_weighted_sum: x >= 2 required");
    i64 sum = 0;
    stream_blocks(x, opts, [&](const FactorBlock& block) {
        for (const FactorRecord& r : block.records) {
            if (r.mu == 0) continue;
            i64 wgt = 1;
            switch (w) {
                case FloorWeight::unit: wgt = 1; break;
                case FloorWeight::omega_minus_1: wgt = static_cast<i64>(r.omega) - 1; break;
                case FloorWeight::omega: wgt = static_cast<i64>(r.omega); break;
            }
            if (wgt == 0) continue;
            const i64 fv = f(r.spf);
            if (fv == 0) continue;
            sum += static_cast<i64>(r.mu) * wgt * fv * static_cast<i64>(x / r.n);
        }
    });
    return sum;
}

CompValue frac_weighted_sum(u64 x, const SliceSpec& slice, const StreamOptions& opts) {
    if (x < 2) throw std::invalid_argument("frac_weighted_sum: x >= 2 required");
    check_slice(slice);
    CompensatedSum acc;
    stream_blocks(x, opts, [&](const FactorBlock& block) {
        for (const FactorRecord& r : block.records) {
            if (r.mu == 0 || !slice.matches(r)) continue;
            const double frac = static_cast<double>(x % r.n) / static_cast<double>(r.n);
            acc.add(static_cast<double>(r.mu) * static_cast<double>(r.omega) * frac);
        }
    });
    return {acc.value(), acc.error_bound()};
}

std::vector<ExceptionalPoint> exceptional_prime_series(u64 p, u64 limit,
                                                       const std::vector<u64>& checkpoints,
                                                       const StreamOptions& opts) {
    if (chi_prime_power(p) != 1 || factorize(p).front().second != 1)
        throw std::domain_error("exceptional_prime_series: p must be prime");
    if (limit < 2) throw std::invalid_argument("exceptional_prime_series: limit >= 2 required");
    check_checkpoints(limit, checkpoints);

    std::vector<ExceptionalPoint> out;
    out.reserve(checkpoints.size());
    CompensatedSum m_omega_p, m_p;
    std::size_t next_cp = 0;
    stream_blocks(limit, opts, [&](const FactorBlock& block) {
        for (const FactorRecord& r : block.records) {
            if (r.mu != 0 && r.spf == p) {
                const double inv = 1.0 / static_cast<double>(r.n);
                m_omega_p.add(static_cast<double>(r.mu) * static_cast<double>(r.omega) * inv);
                m_p.add(static_cast<double>(r.mu) * inv);
            }
            if (next_cp < checkpoints.size() && r.n == checkpoints[next_cp]) {
                out.push_back({r.n,
                               {m_omega_p.value(), m_omega_p.error_bound()},
                               {m_p.value(), m_p.error_bound()}});
                ++next_cp;
            }
        }
    });
    return out;
}

std::vector<KappaPair> kappa_pairs(u64 limit, const PrimeFn& f, const std::vector<u64>& checkpoints,
                                   const StreamOptions& opts) {
    if (limit < 2) throw std::invalid_argument("kappa_pairs: limit >= 2 required");
    check_checkpoints(limit, checkpoints);
    std::vector<KappaPair> out;
    out.reserve(checkpoints.size());
    i64 s1 = 0, s2 = 0;
    std::size_t next_cp = 0;
    stream_blocks(limit, opts, [&](const FactorBlock& block) {
        for (const FactorRecord& r : block.records) {
            s1 += f(r.lpf);
            s2 += f(r.p2_strict);  // f(0) = 0 covers omega < 2
            if (next_cp < checkpoints.size() && r.n == checkpoints[next_cp]) {
                out.push_back({r.n, s1, s2});
                ++next_cp;
            }
        }
    });
    return out;
}

std::vector<std::pair<u64, i64>> pside_average(u64 limit, const PrimeFn& f, int order,
                                               const std::vector<u64>& checkpoints,
                                               const StreamOptions& opts) {
    if (order != 1 && order != 2) throw std::invalid_argument("pside_average: order must be 1 or 2");
    std::vector<std::pair<u64, i64>> out;
    for (const KappaPair& kp : kappa_pairs(limit, f, checkpoints, opts))
        out.emplace_back(kp.x, order == 1 ? kp.sum_P1 : kp.sum_P2);
    return out;
}

SqrtWindowResult sqrt_window_experiment(u64 x, const StreamOptions& opts) {
    if (x < 4) throw std::invalid_argument("sqrt_window_experiment: x >= 4 required");
    const u64 s = isqrt(x);
    SqrtWindowResult res;
    res.x = x;
    stream_blocks(x, opts, [&](const FactorBlock& block) {
        for (const FactorRecord& r : block.records) {
            if (r.lpf > s) ++res.sum_P1;
            if (r.p2_strict > s) ++res.sum_P2;
        }
    });
    const PrimeBasis basis = build_prime_basis(x);
    for (u32 p : basis.primes)
        if (p > s) res.prime_route += static_cast<i64>(x / p);
    return res;
}

std::vector<u64> pow10_checkpoints(u64 limit) {
    if (limit < 2) throw std::invalid_argument("pow10_checkpoints: limit >= 2 required");
    std::vector<u64> cps;
    for (u64 x = 100; x <= limit; x *= 10) {
        cps.push_back(x);
        if (x > limit / 10) break;
    }
    if (cps.empty() || cps.back() != limit) cps.push_back(limit);
    return cps;
}

}  // namespace factdual
