#pragma once
// Shared aliases, error taxonomy and summation helpers.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#else
static inline int omp_get_max_threads() { return 1; }
static inline int omp_get_thread_num() { return 0; }
static inline void omp_set_num_threads(int) {}
#endif

namespace tatl {

using u8 = std::uint8_t;
using i8 = std::int8_t;
using u32 = std::uint32_t;
using i64 = std::int64_t;
using u64 = std::uint64_t;
using i128 = __int128;

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Argument outside the documented domain of an operation.
struct DomainError : Error {
    using Error::Error;
};

// Argument outside the range a table covers.
struct RangeError : Error {
    using Error::Error;
};

// Request exceeds a configured resource ceiling.
struct ResourceError : Error {
    using Error::Error;
};

// Sieve table too small to certify a complete answer.  Carries the
// limit that would have been sufficient.
struct CompletenessError : Error {
    u64 required_limit;
    CompletenessError(const std::string& msg, u64 required)
        : Error(msg), required_limit(required) {}
};

// Cache file unreadable, wrong format or checksum mismatch.
struct CacheError : Error {
    using Error::Error;
};

inline std::string to_string_i128(i128 v) {
    if (v == 0) return "0";
    bool neg = v < 0;
    unsigned __int128 a = neg ? -(unsigned __int128)v : (unsigned __int128)v;
    std::string s;
    while (a) {
        s.push_back(char('0' + int(a % 10)));
        a /= 10;
    }
    if (neg) s.push_back('-');
    return std::string(s.rbegin(), s.rend());
}

// Compensated accumulator.  Neumaier variant: the correction also
// captures the case where the addend dominates the running sum.
struct Kahan {
    double sum = 0.0;
    double c = 0.0;
    void add(double v) {
        double t = sum + v;
        if (std::abs(sum) >= std::abs(v))
            c += (sum - t) + v;
        else
            c += (v - t) + sum;
        sum = t;
    }
    double value() const { return sum + c; }
};

// Number of independent accumulation blocks used by the parallel float
// reductions.  Fixed so the split, and hence the rounding, does not
// depend on the thread count: each block is summed with compensation,
// block results are combined in index order.
inline constexpr u64 kReductionBlocks = 256;

// Deterministic parallel sum of term(i) for i in [lo, hi].  Identical
// result for any thread count, including the serial fallback.
template <class F>
double blocked_sum(u64 lo, u64 hi, F&& term) {
    if (hi < lo) return 0.0;
    u64 n = hi - lo + 1;
    u64 nb = std::min<u64>(kReductionBlocks, n);
    std::vector<double> partial(nb, 0.0);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (u64 b = 0; b < nb; ++b) {
        u64 a = lo + n / nb * b + std::min(b, n % nb);
        u64 z = lo + n / nb * (b + 1) + std::min(b + 1, n % nb);
        Kahan acc;
        for (u64 i = a; i < z; ++i) acc.add(term(i));
        partial[b] = acc.value();
    }
    Kahan total;
    for (double v : partial) total.add(v);
    return total.value();
}

} // namespace tatl
