#include "tatl/census.hpp"

namespace tatl {

RhoTable rho_table(const SieveTable& table, u64 x, u32 kmax) {
    if (x < 1) throw DomainError("rho table: x must be positive");
    if (x > table.limit)
        throw RangeError("rho table: x = " + std::to_string(x) + " outside table range [1, " +
                         std::to_string(table.limit) + "]");
    if (kmax < 1) throw DomainError("rho table: kmax must be >= 1");

    RhoTable r;
    r.x = x;
    r.kmax = kmax;
    r.counts.assign(kmax, 0);
    u64* counts = r.counts.data();
#ifdef _OPENMP
#pragma omp parallel
#endif
    {
        std::vector<u64> local(kmax, 0);
#ifdef _OPENMP
#pragma omp for schedule(static) nowait
#endif
        for (u64 n = 2; n <= x; ++n) {
            u32 w = table.omega[n];
            if (w <= kmax) ++local[w - 1];
        }
#ifdef _OPENMP
#pragma omp critical
#endif
        for (u32 k = 0; k < kmax; ++k) counts[k] += local[k];
    }
    return r;
}

std::vector<u64> divisibility_counterexamples(const SieveTable& table, u64 x, u32 k) {
    if (x < 1) throw DomainError("divisibility check: x must be positive");
    if (x > table.limit)
        throw RangeError("divisibility check: x = " + std::to_string(x) +
                         " outside table range [1, " + std::to_string(table.limit) + "]");
    if (k > 63) throw DomainError("divisibility check: k must be <= 63");
    if (k == 0) return {}; // 2^0 divides everything

    u64 low_bits = (1ull << k) - 1;
    std::vector<u64> out;
#ifdef _OPENMP
#pragma omp parallel
#endif
    {
        std::vector<u64> local;
#ifdef _OPENMP
#pragma omp for schedule(static) nowait
#endif
        for (u64 n = 2; n <= x; ++n)
            if (table.omega[n] >= k + 1 && (table.phi[n] & low_bits) != 0)
                local.push_back(n);
#ifdef _OPENMP
#pragma omp critical
#endif
        out.insert(out.end(), local.begin(), local.end());
    }
    std::sort(out.begin(), out.end());
    return out;
}

BoundReport bound_chain(const SieveTable& table, const TotientImage& image, u64 x, u32 k) {
    if (k < 1 || k > 63) throw DomainError("bound chain: k must be in [1, 63]");
    if (image.x != x)
        throw CompletenessError("bound chain: image built for x = " +
                                    std::to_string(image.x) + ", not " + std::to_string(x),
                                required_preimage_limit(x));
    if (x > table.limit)
        throw RangeError("bound chain: x = " + std::to_string(x) + " outside table range [1, " +
                         std::to_string(table.limit) + "]");

    RhoTable rho = rho_table(table, x, k);
    BoundReport r;
    r.x = x;
    r.k = k;
    r.v_count = image.count;
    r.census_sum = 0;
    for (u32 j = 1; j <= k; ++j) r.census_sum += rho.rho(j);
    r.tail_num = x;
    r.tail_den = 1ull << k;
    r.tail_ceil = (x + r.tail_den - 1) / r.tail_den;
    // slack = census_sum + x/2^k - v_count, over the common denominator.
    r.slack_num = (i128(r.census_sum) - i128(r.v_count)) * i128(r.tail_den) + i128(x);
    r.slack_den = r.tail_den;
    i128 collapsed = i128(k) * i128(rho.rho(k)) * i128(r.tail_den) + i128(x);
    r.collapsed_holds = collapsed >= i128(r.v_count) * i128(r.tail_den);
    return r;
}

double rho_ratio(const SieveTable& table, u64 x, u32 k) {
    if (k < 1) throw DomainError("rho ratio: k must be >= 1");
    if (x < 16) throw DomainError("rho ratio: x must be >= 16 so ln ln x > 1");
    if (x > table.limit)
        throw RangeError("rho ratio: x = " + std::to_string(x) + " outside table range [1, " +
                         std::to_string(table.limit) + "]");
    u64 rho = rho_table(table, x, k).rho(k);
    if (rho == 0) return 0.0;
    double fact = 1.0;
    for (u32 j = 2; j < k; ++j) fact *= double(j);
    double lx = std::log(double(x));
    return double(rho) * fact * lx / (double(x) * std::pow(std::log(lx), double(k - 1)));
}

namespace serial {

std::vector<u64> rho_counts(const SieveTable& table, u64 x, u32 kmax) {
    std::vector<u64> counts(kmax, 0);
    for (u64 n = 2; n <= x; ++n) {
        u32 w = table.omega[n];
        if (w <= kmax) ++counts[w - 1];
    }
    return counts;
}

std::vector<u64> divisibility_counterexamples(const SieveTable& table, u64 x, u32 k) {
    std::vector<u64> out;
    if (k == 0 || k > 63) return out;
    u64 low_bits = (1ull << k) - 1;
    for (u64 n = 2; n <= x; ++n)
        if (table.omega[n] >= k + 1 && (table.phi[n] & low_bits) != 0) out.push_back(n);
    return out;
}

} // namespace serial

} // namespace tatl
