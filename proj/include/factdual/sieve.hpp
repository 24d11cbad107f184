#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "factdual/factor_record.hpp"

namespace factdual {

// n values above this would overflow the u32 prime-factor fields.
inline constexpr u64 kMaxSieveLimit = 0xffffffffULL;  // 2^32 - 1
inline constexpr u64 kDefaultBlockSize = u64{1} << 22;

struct PrimeBasis {
    u64 limit = 0;               // primes cover [2, limit]
    std::vector<u32> primes;     // ascending
};

// Simple Eratosthenes basis; limit up to ~1e8 is fine (byte sieve).
PrimeBasis build_prime_basis(u64 limit);

// Reference factorization of a single n by trial division. Exact for all n <= 2^32-1.
// This is the oracle the block sieve is tested against.
FactorRecord factor_record(u64 n);

// Sieve the half-open range [lo, hi). Requires 2 <= lo < hi <= kMaxSieveLimit+1 and
// basis.limit^2 >= hi-1 (every composite's second factor must be reachable).
FactorBlock sieve_block(u64 lo, u64 hi, const PrimeBasis& basis);

struct StreamOptions {
    u64 block_size = kDefaultBlockSize;
    unsigned workers = 0;  // 0 = resolve from FACTDUAL_WORKERS env, else hardware
};

// Effective worker count: explicit value, else FACTDUAL_WORKERS, else hardware.
unsigned resolve_workers(unsigned requested);

// Stream factor records for n in [2, limit], calling consumer with blocks in strictly
// ascending order exactly once each. Blocks are sieved concurrently (workers > 1) but
// consumption order is always the same, so any fold over the stream is deterministic
// bit-for-bit regardless of worker count.
void stream_blocks(u64 limit, const StreamOptions& opts,
                   const std::function<void(const FactorBlock&)>& consumer);

// --- binary dump -------------------------------------------------------------

inline constexpr char kDumpMagic[8] = {'F', 'D', 'U', 'A', 'L', '0', '0', '1'};
inline constexpr std::size_t kDumpRecordBytes = 27;

// Little-endian, field by field (no struct padding): 8-byte magic, then per record
// n:u64 mu:i8 omega:u8 big_omega:u8 spf:u32 lpf:u32 p2_strict:u32 p2_mult:u32.
void write_dump_header(std::ostream& out);
void write_dump_records(std::ostream& out, const FactorBlock& block);
std::vector<FactorRecord> read_dump(std::istream& in);

// Sieve [2, limit] and dump every record to path. Returns record count.
u64 dump_range(u64 limit, const std::string& path, const StreamOptions& opts);

}  // namespace factdual
