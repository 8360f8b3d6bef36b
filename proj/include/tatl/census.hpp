#pragma once
// Census of omega values on [1, x], the divisibility check
// 2^k | phi(n) for omega(n) >= k+1, and the bound chain
// V(x) <= rho_1 + ... + rho_k + x / 2^k with exact rational slack.

#include "tatl/image.hpp"

namespace tatl {

struct RhoTable {
    u64 x = 0;
    u32 kmax = 0;
    std::vector<u64> counts; // counts[k-1] = |{ n <= x : omega(n) = k }|
    u64 rho(u32 k) const { return (k >= 1 && k <= kmax) ? counts[k - 1] : 0; }
};

// Single pass over omega[2..x].  Requires x <= table.limit, kmax >= 1.
RhoTable rho_table(const SieveTable& table, u64 x, u32 kmax);

// Every n <= x with omega(n) >= k+1 and phi(n) not divisible by 2^k.
// The theorem says this is empty; returned non-empty means the sieve
// is broken.  k = 0 is vacuous.  Requires k <= 63.
std::vector<u64> divisibility_counterexamples(const SieveTable& table, u64 x, u32 k);

struct BoundReport {
    u64 x = 0;
    u32 k = 0;
    u64 v_count = 0;
    u64 census_sum = 0;           // rho_1 + ... + rho_k
    u64 tail_num = 0;             // x over 2^k as an exact fraction
    u64 tail_den = 1;
    u64 tail_ceil = 0;            // ceil(x / 2^k)
    i128 slack_num = 0;           // (census_sum - v_count) 2^k + x, over 2^k
    u64 slack_den = 1;
    bool collapsed_holds = false; // k rho_k + x / 2^k also >= v_count?
};

// Exact rational evaluation of the chain at one (x, k).  Slack of the
// full-sum inequality is reported in lowest-level integers so callers
// can assert slack >= 0 exactly; the collapsed variant k rho_k + tail
// is only reported, it fails for most small x.  Requires 1 <= k <= 63
// and image.x == x with the image certified complete.
BoundReport bound_chain(const SieveTable& table, const TotientImage& image,
                        u64 x, u32 k);

// rho_k(x) / (x (ln ln x)^{k-1} / (ln x (k-1)!)), the ratio to the
// first-order Landau term.  Requires x >= 16; returns 0 when rho_k = 0.
double rho_ratio(const SieveTable& table, u64 x, u32 k);

namespace serial {
std::vector<u64> rho_counts(const SieveTable& table, u64 x, u32 kmax);
std::vector<u64> divisibility_counterexamples(const SieveTable& table, u64 x, u32 k);
}

} // namespace tatl
