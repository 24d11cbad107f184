#include "factdual/sieve.hpp"

#include <algorithm>
#include <condition_variable>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <map>
#include <mutex>
#include <ostream>
#include <stdexcept>
#include <thread>
#include <type_traits>

namespace factdual {

PrimeBasis build_prime_basis(u64 limit) {
    if (limit > kMaxSieveLimit) throw std::invalid_argument("build_prime_basis: limit exceeds 2^32-1");
    PrimeBasis basis;
    basis.limit = limit;
    if (limit < 2) return basis;
    std::vector<u8> composite(limit + 1, 0);
    for (u64 p = 2; p * p <= limit; ++p) {
        if (composite[p]) continue;
        for (u64 m = p * p; m <= limit; m += p) composite[m] = 1;
    }
    for (u64 p = 2; p <= limit; ++p)
        if (!composite[p]) basis.primes.push_back(static_cast<u32>(p));
    return basis;
}

FactorRecord factor_record(u64 n) {
    if (n < 1 || n > kMaxSieveLimit) throw std::invalid_argument("factor_record: need 1 <= n <= 2^32-1");
    FactorRecord r;
    r.n = n;
    if (n == 1) {
        r.mu = 1;
        return r;
    }
    u64 rest = n;
    bool squarefree = true;
    u32 prev = 0, last = 0;
    int top_exp = 0;
    for (u64 p = 2; p * p <= rest; ++p) {
        if (rest % p != 0) continue;
        int e = 0;
        do {
            rest /= p;
            ++e;
        } while (rest % p == 0);
        prev = last;
        last = static_cast<u32>(p);
        top_exp = e;
        if (e > 1) squarefree = false;
        if (r.spf == 0) r.spf = last;
        r.omega += 1;
        r.big_omega += static_cast<u8>(e);
    }
    if (rest > 1) {
        prev = last;
        last = static_cast<u32>(rest);
        top_exp = 1;
        if (r.spf == 0) r.spf = last;
        r.omega += 1;
        r.big_omega += 1;
    }
    r.lpf = last;
    r.p2_strict = r.omega >= 2 ? prev : 0;
    r.p2_mult = r.big_omega >= 2 ? (top_exp >= 2 ? last : prev) : 0;
    r.mu = squarefree ? ((r.omega & 1) ? -1 : 1) : 0;
    return r;
}

FactorBlock sieve_block(u64 lo, u64 hi, const PrimeBasis& basis) {
    if (lo < 2 || hi < lo || hi > kMaxSieveLimit + 1)
        throw std::invalid_argument("sieve_block: need 2 <= lo <= hi <= 2^32");
    if (hi == lo) return FactorBlock{lo, hi, {}};
    const u64 root = isqrt(hi - 1);
    if (basis.limit < root) throw std::invalid_argument("sieve_block: prime basis too small for range");

    const u64 size = hi - lo;
    FactorBlock block;
    block.lo = lo;
    block.hi = hi;
    block.records.assign(size, FactorRecord{});
    std::vector<u64> prod(size, 1);  // product of struck prime powers per index
    std::vector<u8> flags(size, 0);
    constexpr u8 kNotSquarefree = 1;  // some p^2 divides n
    constexpr u8 kTopRepeat = 2;      // the latest distinct prime has exponent >= 2
    FactorRecord* recs = block.records.data();

    for (u32 p32 : basis.primes) {
        const u64 p = p32;
        if (p > root) break;
        u64 start = ((lo + p - 1) / p) * p;
        for (u64 m = start; m < hi; m += p) {
            const u64 i = m - lo;
            FactorRecord& r = recs[i];
            if (r.spf == 0) r.spf = p32;
            r.p2_strict = r.lpf;  // running previous distinct prime
            r.lpf = p32;          // running latest distinct prime
            r.omega += 1;
            r.big_omega += 1;
            prod[i] *= p;
            flags[i] &= static_cast<u8>(~kTopRepeat);
        }
        for (u64 q = p * p; q < hi; q *= p) {
            u64 qstart = ((lo + q - 1) / q) * q;
            for (u64 m = qstart; m < hi; m += q) {
                const u64 i = m - lo;
                recs[i].big_omega += 1;
                prod[i] *= p;
                flags[i] |= kNotSquarefree | kTopRepeat;
            }
        }
    }

    for (u64 i = 0; i < size; ++i) {
        const u64 n = lo + i;
        FactorRecord& r = recs[i];
        r.n = n;
        // Everything <= root is fully struck, so the cofactor is 1 or a single prime > root.
        const u64 cof = n / prod[i];
        if (cof > 1) {
            r.p2_strict = r.lpf;
            r.lpf = static_cast<u32>(cof);
            if (r.spf == 0) r.spf = r.lpf;
            r.omega += 1;
            r.big_omega += 1;
            flags[i] &= static_cast<u8>(~kTopRepeat);
        }
        if (r.omega < 2) r.p2_strict = 0;
        r.p2_mult = r.big_omega >= 2 ? ((flags[i] & kTopRepeat) ? r.lpf : r.p2_strict) : 0;
        r.mu = (flags[i] & kNotSquarefree) ? 0 : ((r.omega & 1) ? -1 : 1);
    }
    return block;
}

unsigned resolve_workers(unsigned requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("FACTDUAL_WORKERS")) {
        char* end = nullptr;
        unsigned long v = std::strtoul(env, &end, 10);
        if (end != env && *end == '\0' && v >= 1 && v <= 1024) return static_cast<unsigned>(v);
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

void stream_blocks(u64 limit, const StreamOptions& opts,
                   const std::function<void(const FactorBlock&)>& consumer) {
    if (limit < 2) return;
    if (limit > kMaxSieveLimit) throw std::invalid_argument("stream_blocks: limit exceeds 2^32-1");
    const u64 block_size = opts.block_size > 0 ? opts.block_size : kDefaultBlockSize;
    const u64 first = 2;
    const u64 end = limit + 1;
    const u64 nblocks = (end - first + block_size - 1) / block_size;
    const PrimeBasis basis = build_prime_basis(isqrt(limit));
    const unsigned workers = resolve_workers(opts.workers);

    if (workers <= 1 || nblocks <= 1) {
        for (u64 b = 0; b < nblocks; ++b) {
            const u64 lo = first + b * block_size;
            const u64 hi = std::min(end, lo + block_size);
            consumer(sieve_block(lo, hi, basis));
        }
        return;
    }

    // Workers sieve blocks out of order into a bounded buffer; this thread consumes
    // strictly in index order, which makes every fold deterministic.
    std::mutex mu;
    std::condition_variable cv_room;
    std::condition_variable cv_ready;
    std::map<u64, FactorBlock> ready;
    u64 next_to_take = 0;
    u64 next_to_emit = 0;
    std::exception_ptr error;
    const u64 per_block_bytes = block_size * (sizeof(FactorRecord) + 9);
    const u64 buffer_cap = std::max<u64>(
        2, std::min<u64>(u64{workers} * 2, (u64{1} << 30) / std::max<u64>(per_block_bytes, 1)));

    auto work = [&]() {
        for (;;) {
            u64 b;
            {
                std::unique_lock<std::mutex> lk(mu);
                cv_room.wait(lk, [&] {
                    return error || next_to_take >= nblocks ||
                           next_to_take < next_to_emit + buffer_cap;
                });
                if (error || next_to_take >= nblocks) return;
                b = next_to_take++;
            }
            const u64 lo = first + b * block_size;
            const u64 hi = std::min(end, lo + block_size);
            try {
                FactorBlock blk = sieve_block(lo, hi, basis);
                std::lock_guard<std::mutex> lk(mu);
                ready.emplace(b, std::move(blk));
                cv_ready.notify_all();
            } catch (...) {
                std::lock_guard<std::mutex> lk(mu);
                if (!error) error = std::current_exception();
                cv_ready.notify_all();
                cv_room.notify_all();
            }
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);

    while (true) {
        FactorBlock blk;
        {
            std::unique_lock<std::mutex> lk(mu);
            cv_ready.wait(lk, [&] {
                return error || next_to_emit >= nblocks || ready.count(next_to_emit) > 0;
            });
            if (error || next_to_emit >= nblocks) break;
            auto it = ready.find(next_to_emit);
            blk = std::move(it->second);
            ready.erase(it);
            ++next_to_emit;
            cv_room.notify_all();
        }
        try {
            consumer(blk);
        } catch (...) {
            std::lock_guard<std::mutex> lk(mu);
            if (!error) error = std::current_exception();
            cv_room.notify_all();
            break;
        }
    }
    {
        std::lock_guard<std::mutex> lk(mu);
        if (!error) next_to_take = nblocks;  // nothing left; let waiting workers exit
        cv_room.notify_all();
    }
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

namespace {

void append_le(std::vector<unsigned char>& buf, u64 v, int bytes) {
    for (int i = 0; i < bytes; ++i) buf.push_back(static_cast<unsigned char>(v >> (8 * i)));
}

u64 read_le(const unsigned char* p, int bytes) {
    u64 v = 0;
    for (int i = 0; i < bytes; ++i) v |= static_cast<u64>(p[i]) << (8 * i);
    return v;
}

}  // namespace

void write_dump_header(std::ostream& out) { out.write(kDumpMagic, sizeof(kDumpMagic)); }

void write_dump_records(std::ostream& out, const FactorBlock& block) {
    std::vector<unsigned char> buf;
    buf.reserve(block.records.size() * kDumpRecordBytes);
    for (const FactorRecord& r : block.records) {
        append_le(buf, r.n, 8);
        append_le(buf, static_cast<u8>(r.mu), 1);
        append_le(buf, r.omega, 1);
        append_le(buf, r.big_omega, 1);
        append_le(buf, r.spf, 4);
        append_le(buf, r.lpf, 4);
        append_le(buf, r.p2_strict, 4);
        append_le(buf, r.p2_mult, 4);
    }
    out.write(reinterpret_cast<const char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
}

std::vector<FactorRecord> read_dump(std::istream& in) {
    char magic[sizeof(kDumpMagic)];
    in.read(magic, sizeof(magic));
    if (in.gcount() != sizeof(magic) || !std::equal(magic, magic + sizeof(magic), kDumpMagic))
        throw std::runtime_error("read_dump: bad magic");
    std::vector<FactorRecord> out;
    unsigned char rec[kDumpRecordBytes];
    for (;;) {
        in.read(reinterpret_cast<char*>(rec), sizeof(rec));
        const std::streamsize got = in.gcount();
        if (got == 0) break;
        if (got != static_cast<std::streamsize>(sizeof(rec)))
            throw std::runtime_error("read_dump: truncated record");
        FactorRecord r;
        r.n = read_le(rec, 8);
        r.mu = static_cast<i8>(rec[8]);
        r.omega = rec[9];
        r.big_omega = rec[10];
        r.spf = static_cast<u32>(read_le(rec + 11, 4));
        r.lpf = static_cast<u32>(read_le(rec + 15, 4));
        r.p2_strict = static_cast<u32>(read_le(rec + 19, 4));
        r.p2_mult = static_cast<u32>(read_le(rec + 23, 4));
        out.push_back(r);
    }
    return out;
}

u64 dump_range(u64 limit, const std::string& path, const StreamOptions& opts) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("dump_range: cannot open " + path);
    write_dump_header(out);
    u64 count = 0;
    stream_blocks(limit, opts, [&](const FactorBlock& block) {
        write_dump_records(out, block);
        count += block.records.size();
    });
    out.flush();
    if (!out) throw std::runtime_error("dump_range: write failed for " + path);
    return count;
}

}  // namespace factdual
