#pragma once
// Totient image on [1, x]: membership bitmap, counts, gaps between
// consecutive members and the record (strictly larger than all
// earlier) gaps.

#include "tatl/sieve.hpp"

#include <optional>

namespace tatl {

enum class PreimageBound {
    elementary, // N = 2 x^2, from phi(n) >= sqrt(n/2)
    refined,    // fixed point of n = x (e^gamma ln ln n + 3 / ln ln n)
};

// Scan bound N such that every m <= x with a phi-preimage has one
// <= N.  Deterministic.  The refined bound is never below 100 and
// undercuts the elementary one from x = 100 on.
u64 preimage_limit_for(u64 x, PreimageBound mode);

// min over both modes; what totient_image_up_to actually scans.
u64 required_preimage_limit(u64 x);

struct TotientImage {
    u64 x = 0;
    u64 preimage_limit = 0; // scan bound the bitmap was built from
    u64 count = 0;          // number of members, V(x)
    std::vector<u64> bits;  // value v is a member iff bit v-1 set

    bool contains(u64 v) const {
        return v >= 1 && v <= x && (bits[(v - 1) >> 6] >> ((v - 1) & 63) & 1);
    }
};

// Marks phi(n) for all n <= required_preimage_limit(x).  Throws
// CompletenessError (carrying the required limit) when the table
// cannot certify completeness at x.
TotientImage totient_image_up_to(const SieveTable& table, u64 x);

u64 v_count(const SieveTable& table, u64 x);

// Minimal n with phi(n) = m, or nullopt when m is a nontotient.
// Requires table.limit >= required_preimage_limit(m).
std::optional<u64> totient_witness(const SieveTable& table, u64 m);

struct GapRecord {
    u64 lower = 0; // member v_n
    u64 upper = 0; // next member v_{n+1}
    u64 gap = 0;   // upper - lower

    bool operator==(const GapRecord&) const = default;
};

// All gaps between consecutive members, in increasing lower.
std::vector<GapRecord> gaps(const TotientImage& image);

// Subsequence of gaps() where each gap strictly exceeds every earlier
// one.  First entry is (1, 2, 1) whenever x >= 2.
std::vector<GapRecord> record_gaps(const TotientImage& image);

namespace serial {
// Single-thread bitmap marking, plain (non-atomic) bit sets.
std::vector<u64> image_bits(const SieveTable& table, u64 x, u64 scan_limit);
}

} // namespace tatl
