#include "tatl/sieve.hpp"

namespace tatl {

SieveTable build_sieve(u64 limit, u64 memory_ceiling) {
    if (limit == 0) throw DomainError("sieve limit must be positive");
    if (limit > 0xFFFFFFFFull)
        throw DomainError("sieve limit " + std::to_string(limit) +
                          " does not fit 32-bit table entries");
    u64 need = (limit + 1) * kBytesPerEntry;
    if (need > memory_ceiling)
        throw ResourceError("sieve of limit " + std::to_string(limit) + " needs " +
                            std::to_string(need) + " bytes, over the ceiling of " +
                            std::to_string(memory_ceiling) + " bytes");

    SieveTable t;
    t.limit = limit;
    t.spf.assign(limit + 1, 0);
    t.phi.assign(limit + 1, 0);
    t.mobius.assign(limit + 1, 0);
    t.omega.assign(limit + 1, 0);
    t.spf[1] = 1;
    t.phi[1] = 1;
    t.mobius[1] = 1;
    t.omega[1] = 0;

    // Linear sieve: each composite m is marked exactly once, by its
    // smallest prime factor p and cofactor n = m / p.
    std::vector<u32> primes;
    primes.reserve(limit / 16 + 16);
    for (u64 n = 2; n <= limit; ++n) {
        if (t.spf[n] == 0) {
            t.spf[n] = u32(n);
            t.phi[n] = u32(n - 1);
            t.mobius[n] = -1;
            t.omega[n] = 1;
            primes.push_back(u32(n));
        }
        for (u32 p : primes) {
            if (p > t.spf[n] || p > limit / n) break;
            u64 m = n * p;
            t.spf[m] = p;
            if (p == t.spf[n]) {
                t.phi[m] = t.phi[n] * p;
                t.mobius[m] = 0;
                t.omega[m] = t.omega[n];
                break;
            }
            t.phi[m] = t.phi[n] * (p - 1);
            t.mobius[m] = i8(-t.mobius[n]);
            t.omega[m] = u8(t.omega[n] + 1);
        }
    }
    return t;
}

Factorization factorize(const SieveTable& table, u64 n) {
    if (n < 1 || n > table.limit)
        throw RangeError("factorize: n = " + std::to_string(n) +
                         " outside table range [1, " + std::to_string(table.limit) + "]");
    Factorization f;
    f.n = n;
    while (n > 1) {
        u64 p = table.spf[n];
        u32 e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        f.factors.emplace_back(p, e);
    }
    return f;
}

u64 coprime_count(const SieveTable& table, u64 x, u64 m) {
    if (m < 1 || m > table.limit)
        throw RangeError("coprime_count: m = " + std::to_string(m) +
                         " outside table range [1, " + std::to_string(table.limit) + "]");
    if (x < 1) throw DomainError("coprime_count: x must be positive");
    Factorization f = factorize(table, m);
    std::size_t w = f.factors.size(); // <= 9 for m < 2^32
    i128 total = 0;
    for (u32 mask = 0; mask < (1u << w); ++mask) {
        u64 d = 1;
        int sign = 1;
        for (std::size_t i = 0; i < w; ++i)
            if (mask >> i & 1) {
                d *= f.factors[i].first;
                sign = -sign;
            }
        total += sign > 0 ? i128(x / d) : -i128(x / d);
    }
    return u64(total);
}

bool euler_product_check(const SieveTable& table, u64 n) {
    Factorization f = factorize(table, n);
    u64 value = n;
    for (auto [p, e] : f.factors) value = value / p * (p - 1);
    return value == table.phi[n];
}

} // namespace tatl
