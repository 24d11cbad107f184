#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <vector>

#include "doctest.h"
#include "factdual/sieve.hpp"

using namespace factdual;

TEST_CASE("trial-division record matches hand-worked values") {
    // n = 1
    auto r1 = factor_record(1);
    CHECK(r1.mu == 1);
    CHECK(r1.omega == 0);
    CHECK(r1.big_omega == 0);
    CHECK(r1.spf == 0);
    CHECK(r1.lpf == 0);
    CHECK(r1.p2_strict == 0);
    CHECK(r1.p2_mult == 0);

    // n = 2 (prime)
    auto r2 = factor_record(2);
    CHECK(r2.mu == -1);
    CHECK(r2.omega == 1);
    CHECK(r2.big_omega == 1);
    CHECK(r2.spf == 2);
    CHECK(r2.lpf == 2);
    CHECK(r2.p2_strict == 0);
    CHECK(r2.p2_mult == 0);

    // n = 4 = 2^2: with multiplicity the second-largest factor is 2
    auto r4 = factor_record(4);
    CHECK(r4.mu == 0);
    CHECK(r4.omega == 1);
    CHECK(r4.big_omega == 2);
    CHECK(r4.spf == 2);
    CHECK(r4.lpf == 2);
    CHECK(r4.p2_strict == 0);
    CHECK(r4.p2_mult == 2);

    // n = 12 = 2^2 * 3: distinct second-largest is 2, with multiplicity 2
    auto r12 = factor_record(12);
    CHECK(r12.mu == 0);
    CHECK(r12.omega == 2);
    CHECK(r12.big_omega == 3);
    CHECK(r12.spf == 2);
    CHECK(r12.lpf == 3);
    CHECK(r12.p2_strict == 2);
    CHECK(r12.p2_mult == 2);

    // n = 18 = 2 * 3^2: top prime repeats, so p2_mult = 3 but p2_strict = 2
    auto r18 = factor_record(18);
    CHECK(r18.mu == 0);
    CHECK(r18.omega == 2);
    CHECK(r18.big_omega == 3);
    CHECK(r18.p2_strict == 2);
    CHECK(r18.p2_mult == 3);

    // n = 30 = 2 * 3 * 5 squarefree
    auto r30 = factor_record(30);
    CHECK(r30.mu == -1);
    CHECK(r30.omega == 3);
    CHECK(r30.big_omega == 3);
    CHECK(r30.spf == 2);
    CHECK(r30.lpf == 5);
    CHECK(r30.p2_strict == 3);
    CHECK(r30.p2_mult == 3);

    // n = 2^10
    auto r1024 = factor_record(1024);
    CHECK(r1024.mu == 0);
    CHECK(r1024.omega == 1);
    CHECK(r1024.big_omega == 10);
    CHECK(r1024.p2_strict == 0);
    CHECK(r1024.p2_mult == 2);

    // n = 6! = 720 = 2^4 * 3^2 * 5
    auto r720 = factor_record(720);
    CHECK(r720.omega == 3);
    CHECK(r720.big_omega == 7);
    CHECK(r720.spf == 2);
    CHECK(r720.lpf == 5);
    CHECK(r720.p2_strict == 3);
    CHECK(r720.p2_mult == 3);

    // n = 2 * 7^2 = 98: top prime repeats
    auto r98 = factor_record(98);
    CHECK(r98.p2_strict == 2);
    CHECK(r98.p2_mult == 7);
}

TEST_CASE("prime basis matches known prime counts") {
    auto basis = build_prime_basis(100);
    CHECK(basis.primes.size() == 25);
    CHECK(basis.primes.front() == 2);
    CHECK(basis.primes.back() == 97);

    auto big = build_prime_basis(10000);
    CHECK(big.primes.size() == 1229);
}

TEST_CASE("sieved blocks agree with trial division") {
    auto check_range = [](u64 lo, u64 hi) {
        auto basis = build_prime_basis(isqrt(hi - 1));
        auto block = sieve_block(lo, hi, basis);
        REQUIRE(block.records.size() == hi - lo);
        for (u64 n = lo; n < hi; ++n) {
            auto want = factor_record(n);
            auto got = block.at(n);
            CAPTURE(n);
            CHECK(got == want);
        }
    };
    check_range(2, 2048);
    check_range(2048, 4096);
    check_range(999000, 1000001);     // block far from the origin
    check_range(1048570, 1048600);    // straddles 2^20
}

TEST_CASE("empty block range is allowed") {
    auto basis = build_prime_basis(100);
    auto block = sieve_block(50, 50, basis);
    CHECK(block.records.empty());
    CHECK_THROWS_AS(sieve_block(1, 10, basis), std::invalid_argument);
    CHECK_THROWS_AS(sieve_block(50, 40, basis), std::invalid_argument);
}

TEST_CASE("sieved blocks agree with trial division around large powers") {
    // ranges around perfect powers where the cofactor logic is exercised
    auto basis = build_prime_basis(isqrt(16810000));
    auto block = sieve_block(16796150, 16796180, basis);  // near 2^24
    for (u64 n = 16796150; n < 16796180; ++n) {
        CAPTURE(n);
        CHECK(block.at(n) == factor_record(n));
    }
}

TEST_CASE("stream_blocks covers [2, limit] in ascending order") {
    StreamOptions opts;
    opts.block_size = 1000;
    opts.workers = 1;
    std::vector<u64> seen;
    u64 count = 0;
    u64 expect_next = 2;
    bool contiguous = true;
    stream_blocks(12345, opts, [&](const FactorBlock& b) {
        seen.push_back(b.lo);
        for (const FactorRecord& r : b.records) {
            if (r.n != expect_next) contiguous = false;
            ++expect_next;
        }
        count += b.records.size();
    });
    REQUIRE(!seen.empty());
    CHECK(seen.front() == 2);
    for (size_t i = 1; i < seen.size(); ++i) CHECK(seen[i] > seen[i - 1]);
    CHECK(contiguous);
    CHECK(count == 12344);  // records for n = 2..12345
}

TEST_CASE("stream_blocks is deterministic across worker counts") {
    auto collect = [](unsigned workers) {
        StreamOptions opts;
        opts.block_size = 512;
        opts.workers = workers;
        std::vector<FactorRecord> all;
        stream_blocks(20000, opts, [&](const FactorBlock& b) {
            all.insert(all.end(), b.records.begin(), b.records.end());
        });
        return all;
    };
    auto serial = collect(1);
    auto parallel = collect(4);
    REQUIRE(serial.size() == parallel.size());
    CHECK(serial == parallel);
}

TEST_CASE("stream_blocks propagates consumer exceptions") {
    StreamOptions opts;
    opts.block_size = 256;
    opts.workers = 4;
    int calls = 0;
    CHECK_THROWS_AS(
        stream_blocks(100000, opts,
                      [&](const FactorBlock&) {
                          if (++calls == 3) throw std::runtime_error("stop");
                      }),
        std::runtime_error);
}

TEST_CASE("dump round-trip preserves every record bit-exactly") {
    namespace fs = std::filesystem;
    auto path = fs::temp_directory_path() / "factdual_test_dump.bin";
    StreamOptions opts;
    opts.block_size = 300;
    opts.workers = 2;
    u64 written = dump_range(2000, path.string(), opts);
    CHECK(written == 1999);  // n = 2..2000

    std::ifstream in(path, std::ios::binary);
    auto back = read_dump(in);
    REQUIRE(back.size() == 1999);
    for (u64 n = 2; n <= 2000; ++n) {
        CAPTURE(n);
        CHECK(back[n - 2] == factor_record(n));
    }

    // header magic is pinned
    std::FILE* f = std::fopen(path.string().c_str(), "rb");
    REQUIRE(f != nullptr);
    char magic[8];
    REQUIRE(std::fread(magic, 1, 8, f) == 8);
    std::fclose(f);
    CHECK(std::string(magic, 8) == "FDUAL001");
    fs::remove(path);
}

TEST_CASE("dump record layout is 27 bytes little-endian") {
    namespace fs = std::filesystem;
    auto path = fs::temp_directory_path() / "factdual_test_layout.bin";
    StreamOptions opts;
    dump_range(12, path.string(), opts);

    std::FILE* f = std::fopen(path.string().c_str(), "rb");
    REQUIRE(f != nullptr);
    std::fseek(f, 0, SEEK_END);
    long size = std::ftell(f);
    CHECK(size == 8 + 11 * 27);  // records for n = 2..12

    // record for n = 12 sits at offset 8 + 10*27
    std::fseek(f, 8 + 10 * 27, SEEK_SET);
    unsigned char rec[27];
    REQUIRE(std::fread(rec, 1, 27, f) == 27);
    std::fclose(f);

    auto le32 = [&](int off) {
        return static_cast<u32>(rec[off]) | static_cast<u32>(rec[off + 1]) << 8 |
               static_cast<u32>(rec[off + 2]) << 16 | static_cast<u32>(rec[off + 3]) << 24;
    };
    u64 n = 0;
    for (int i = 7; i >= 0; --i) n = n << 8 | rec[i];
    CHECK(n == 12);
    CHECK(static_cast<signed char>(rec[8]) == 0);  // mu(12) = 0
    CHECK(rec[9] == 2);                            // omega
    CHECK(rec[10] == 3);                           // with multiplicity
    CHECK(le32(11) == 2);                          // smallest prime factor
    CHECK(le32(15) == 3);                          // largest prime factor
    CHECK(le32(19) == 2);                          // second-largest, distinct
    CHECK(le32(23) == 2);                          // second-largest, multiplicity
    fs::remove(path);
}

TEST_CASE("squarefree density approaches 6/pi^2") {
    u64 squarefree = 0;
    const u64 x = 1000000;
    stream_blocks(x, {}, [&](const FactorBlock& b) {
        for (const FactorRecord& r : b.records)
            if (r.mu != 0) ++squarefree;
    });
    ++squarefree;  // n = 1
    const double density = static_cast<double>(squarefree) / static_cast<double>(x);
    CHECK(std::abs(density - 6.0 / (M_PI * M_PI)) < 0.01);
}

TEST_CASE("worker resolution honours the environment variable") {
    CHECK(resolve_workers(3) == 3);
#ifndef _WIN32
    setenv("FACTDUAL_WORKERS", "5", 1);
    CHECK(resolve_workers(0) == 5);
    setenv("FACTDUAL_WORKERS", "junk", 1);
    CHECK(resolve_workers(0) >= 1);  // falls back to hardware default
    unsetenv("FACTDUAL_WORKERS");
#endif
    CHECK(resolve_workers(0) >= 1);
}
