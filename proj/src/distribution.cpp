#include "factdual/distribution.hpp"

#include <numeric>
#include <stdexcept>

namespace factdual {

std::vector<SmoothCount> psi_batch(u64 x, const std::vector<u64>& ys, const StreamOptions& opts) {
    if (x < 1) throw std::invalid_argument("psi: x >= 1 required");
    for (u64 y : ys)
        if (y < 1) throw std::invalid_argument("psi: y >= 1 required");
    std::vector<u64> counts(ys.size(), 1);  // n = 1 is y-smooth for every y
    if (x >= 2) {
        stream_blocks(x, opts, [&](const FactorBlock& block) {
            for (const FactorRecord& r : block.records)
                for (std::size_t i = 0; i < ys.size(); ++i)
                    if (r.lpf <= ys[i]) ++counts[i];
        });
    }
    std::vector<SmoothCount> out(ys.size());
    for (std::size_t i = 0; i < ys.size(); ++i) out[i] = {x, ys[i], counts[i]};
    return out;
}

std::vector<SmoothCount> psi2_batch(u64 x, const std::vector<u64>& ys, const StreamOptions& opts) {
    if (x < 1) throw std::invalid_argument("psi2: x >= 1 required");
    for (u64 y : ys)
        if (y < 1) throw std::invalid_argument("psi2: y >= 1 required");
    std::vector<u64> counts(ys.size(), 1);
    if (x >= 2) {
        stream_blocks(x, opts, [&](const FactorBlock& block) {
            for (const FactorRecord& r : block.records)
                // strict P2 with P2(n) = 1 when omega(n) < 2 (p2_strict = 0 encodes that)
                for (std::size_t i = 0; i < ys.size(); ++i)
                    if (r.p2_strict <= ys[i]) ++counts[i];
        });
    }
    std::vector<SmoothCount> out(ys.size());
    for (std::size_t i = 0; i < ys.size(); ++i) out[i] = {x, ys[i], counts[i]};
    return out;
}

u64 psi(u64 x, u64 y, const StreamOptions& opts) { return psi_batch(x, {y}, opts)[0].value; }

u64 psi2(u64 x, u64 y, const StreamOptions& opts) { return psi2_batch(x, {y}, opts)[0].value; }

u64 repeated_lpf_count(u64 x, const StreamOptions& opts) {
    if (x < 2) throw std::invalid_argument("repeated_lpf_count: x >= 2 required");
    u64 count = 0;
    stream_blocks(x, opts, [&](const FactorBlock& block) {
        for (const FactorRecord& r : block.records)
            // P(n)^2 | n exactly when the multiplicity-aware second factor is P(n) itself
            if (r.big_omega >= 2 && r.p2_mult == r.lpf) ++count;
    });
    return count;
}

u64 ResidueCountTable::total() const {
    u64 t = undefined_count;
    for (u64 c : counts) t += c;
    return t;
}

ResidueCountTable residue_counts(u64 x, u64 k, Side side, const StreamOptions& opts) {
    if (x < 2) throw std::invalid_argument("residue_counts: x >= 2 required");
    if (k < 1) throw std::invalid_argument("residue_counts: k >= 1 required");
    if (side == Side::smallest)
        throw std::invalid_argument("residue_counts: side must be largest or second_largest");
    ResidueCountTable table;
    table.x = x;
    table.k = k;
    table.side = side;
    table.counts.assign(k, 0);
    stream_blocks(x, opts, [&](const FactorBlock& block) {
        for (const FactorRecord& r : block.records) {
            const u64 field = side == Side::largest ? r.lpf : r.p2_strict;
            if (field == 0)
                ++table.undefined_count;
            else
                ++table.counts[field % k];
        }
    });
    return table;
}

}  // namespace factdual
