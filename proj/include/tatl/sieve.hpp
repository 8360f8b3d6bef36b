#pragma once
// Linear sieve over [1, limit]: smallest prime factor, Euler phi,
// Mobius mu and distinct-prime-factor count omega in one pass.

#include "tatl/common.hpp"

#include <filesystem>
#include <utility>

namespace tatl {

// Ten bytes per entry; index 0 is padding so tables are 1-based.
struct SieveTable {
    u64 limit = 0;
    std::vector<u32> spf;    // spf[1] = 1, spf[p] = p for prime p
    std::vector<u32> phi;    // phi[1] = 1
    std::vector<i8> mobius;  // mobius[1] = 1, 0 on non-squarefree
    std::vector<u8> omega;   // omega[1] = 0

    bool is_prime(u64 n) const { return n >= 2 && spf[n] == n; }
};

// Prime powers p^a in increasing p, exponents >= 1.
struct Factorization {
    u64 n = 0;
    std::vector<std::pair<u64, u32>> factors;
};

inline constexpr u64 kDefaultMemoryCeiling = u64(8) << 30;
inline constexpr u64 kBytesPerEntry = 10;

// Builds the table.  Throws ResourceError when limit * 10 bytes would
// exceed the ceiling, DomainError for limit 0 or >= 2^32.
SieveTable build_sieve(u64 limit, u64 memory_ceiling = kDefaultMemoryCeiling);

// Reads prime powers off the spf chain.  Requires 1 <= n <= limit.
Factorization factorize(const SieveTable& table, u64 n);

// |{ j in [1, floor(x)] : gcd(j, m) = 1 }| by inclusion-exclusion over
// the squarefree divisors of m.  Requires m in [1, limit].
u64 coprime_count(const SieveTable& table, u64 x, u64 m);

// Recomputes phi(n) from the factorization in exact integer steps and
// compares with the sieved value.
bool euler_product_check(const SieveTable& table, u64 n);

// Cache file, little-endian:
//   "TATL" | u8 version(=1) | u64 limit |
//   spf[1..limit] u32 | phi[1..limit] u32 | mobius[1..limit] i8 |
//   omega[1..limit] u8 | u64 FNV-1a-64 over the four arrays
void save_sieve(const SieveTable& table, const std::filesystem::path& path);

// Throws CacheError on bad magic, unknown version, truncation or
// checksum mismatch; never modifies the file.
SieveTable load_sieve(const std::filesystem::path& path,
                      u64 memory_ceiling = kDefaultMemoryCeiling);

u64 fnv1a64(const void* data, std::size_t len, u64 seed = 14695981039346656037ull);

} // namespace tatl
