#include "tatl/image.hpp"

#include <atomic>
#include <bit>

namespace tatl {

namespace {

// e^gamma, gamma the Euler-Mascheroni constant.
constexpr double kExpGamma = 1.7810724179901980;

// x * (e^gamma ln ln n + 3 / ln ln n); an upper bound for any n with
// phi(n) <= x, by the Rosser-Schoenfeld lower bound for phi (the
// constant 3 absorbs their single exceptional modulus).
double rs_envelope(u64 x, u64 n) {
    double ll = std::log(std::log(double(n)));
    return double(x) * (kExpGamma * ll + 3.0 / ll);
}

u64 elementary_limit(u64 x) {
    // 2 x^2 from phi(n) >= sqrt(n/2); saturate instead of overflowing.
    unsigned __int128 n = (unsigned __int128)(x) * x * 2;
    if (n > (unsigned __int128)UINT64_MAX) return UINT64_MAX;
    return u64(n);
}

u64 refined_limit(u64 x) {
    // Least n >= 100 with n >= rs_envelope(x, n).  The envelope is
    // increasing and sublinear in n, so iterating from below
    // converges; the final check absorbs rounding of the ceil.
    u64 n = 100;
    for (int i = 0; i < 128; ++i) {
        double h = rs_envelope(x, n);
        if (h >= 1.8e19) return UINT64_MAX;
        u64 next = u64(std::ceil(h));
        if (next <= n) break;
        n = next;
    }
    while (double(n) < rs_envelope(x, n)) ++n;
    return n;
}

} // namespace

u64 preimage_limit_for(u64 x, PreimageBound mode) {
    if (x < 1) throw DomainError("preimage limit: x must be positive");
    return mode == PreimageBound::elementary ? elementary_limit(x) : refined_limit(x);
}

u64 required_preimage_limit(u64 x) {
    return std::min(preimage_limit_for(x, PreimageBound::elementary),
                    preimage_limit_for(x, PreimageBound::refined));
}

TotientImage totient_image_up_to(const SieveTable& table, u64 x) {
    if (x < 1) throw DomainError("totient image: x must be positive");
    u64 scan = required_preimage_limit(x);
    if (table.limit < scan)
        throw CompletenessError("totient image at x = " + std::to_string(x) +
                                    " needs sieve limit " + std::to_string(scan) +
                                    ", table has " + std::to_string(table.limit),
                                scan);
    TotientImage img;
    img.x = x;
    img.preimage_limit = scan;
    img.bits.assign((x + 63) / 64, 0);

    u64* words = img.bits.data();
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (u64 n = 1; n <= scan; ++n) {
        u64 v = table.phi[n];
        if (v <= x) {
            u64 bit = v - 1;
            // Idempotent set: concurrent marks of one word are fine.
            std::atomic_ref<u64>(words[bit >> 6]).fetch_or(1ull << (bit & 63),
                                                           std::memory_order_relaxed);
        }
    }

    u64 count = 0;
#ifdef _OPENMP
#pragma omp parallel for schedule(static) reduction(+ : count)
#endif
    for (u64 w = 0; w < img.bits.size(); ++w) count += std::popcount(img.bits[w]);
    img.count = count;
    return img;
}

u64 v_count(const SieveTable& table, u64 x) {
    return totient_image_up_to(table, x).count;
}

std::optional<u64> totient_witness(const SieveTable& table, u64 m) {
    if (m < 1) throw DomainError("totient witness: m must be positive");
    u64 scan = required_preimage_limit(m);
    if (table.limit < scan)
        throw CompletenessError("totient witness at m = " + std::to_string(m) +
                                    " needs sieve limit " + std::to_string(scan) +
                                    ", table has " + std::to_string(table.limit),
                                scan);
    for (u64 n = 1; n <= scan; ++n)
        if (table.phi[n] == m) return n;
    return std::nullopt;
}

std::vector<GapRecord> gaps(const TotientImage& image) {
    std::vector<GapRecord> out;
    u64 prev = 0;
    for (u64 w = 0; w < image.bits.size(); ++w) {
        u64 bits = image.bits[w];
        while (bits) {
            u64 member = (w << 6) + u64(std::countr_zero(bits)) + 1;
            bits &= bits - 1;
            if (prev != 0) out.push_back({prev, member, member - prev});
            prev = member;
        }
    }
    return out;
}

std::vector<GapRecord> record_gaps(const TotientImage& image) {
    std::vector<GapRecord> out;
    u64 best = 0;
    for (const GapRecord& g : gaps(image))
        if (g.gap > best) {
            best = g.gap;
            out.push_back(g);
        }
    return out;
}

namespace serial {

std::vector<u64> image_bits(const SieveTable& table, u64 x, u64 scan_limit) {
    std::vector<u64> bits((x + 63) / 64, 0);
    for (u64 n = 1; n <= scan_limit; ++n) {
        u64 v = table.phi[n];
        if (v <= x) bits[(v - 1) >> 6] |= 1ull << ((v - 1) & 63);
    }
    return bits;
}

} // namespace serial

} // namespace tatl
