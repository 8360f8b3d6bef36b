#include "tatl/optimizer.hpp"

#include <numbers>

namespace tatl {

double branch_g(double c) {
    return 1.0 - c + c * std::log(c) - c * std::numbers::ln2;
}

double branch_g_prime(double c) { return std::log(c) - std::numbers::ln2; }

ExponentSolution solve_cstar(double tolerance) {
    if (!(tolerance >= 1e-14))
        throw DomainError("solve_cstar: tolerance must be >= 1e-14");
    const double eps = 1e-6;
    double lo = eps, hi = 1.0 - eps;
    double glo = branch_g(lo), ghi = branch_g(hi);
    if (!(glo > 0.0 && ghi < 0.0))
        throw Error("solve_cstar: bracket does not straddle a sign change");

    ExponentSolution s;
    u32 iters = 0;
    // Bisect to a short interval; g is strictly decreasing here.
    while (hi - lo > 1e-3) {
        double mid = 0.5 * (lo + hi);
        ++iters;
        if (branch_g(mid) > 0.0)
            lo = mid;
        else
            hi = mid;
    }
    // Newton polish; g' = ln c - ln 2 is bounded away from 0 on (0,1).
    double c = 0.5 * (lo + hi);
    for (int i = 0; i < 64; ++i) {
        double g = branch_g(c);
        ++iters;
        if (std::abs(g) <= 0.25 * tolerance) break;
        double step = g / branch_g_prime(c);
        double next = std::clamp(c - step, lo, hi);
        if (next == c) break;
        c = next;
    }
    s.c_star = c;
    s.exponent = c * std::numbers::ln2;
    s.residual = std::abs(branch_g(c));
    s.iterations = iters;
    s.bracket_lo = lo;
    s.bracket_hi = hi;
    return s;
}

Branches exponent_branches(double c) {
    if (!(c > 0.0 && c < 1.0))
        throw DomainError("exponent branches: c must lie in (0, 1)");
    Branches b;
    b.first = 1.0 - c + c * std::log(c);
    b.second = c * std::numbers::ln2;
    b.min = std::min(b.first, b.second);
    return b;
}

u32 k_of_x(double x, double c) {
    if (!(x > std::numbers::e))
        throw DomainError("k_of_x: x must exceed e so ln ln x > 0");
    if (!(c > 0.0 && c < 1.0))
        throw DomainError("k_of_x: c must lie in (0, 1)");
    double k = std::ceil(c * std::log(std::log(x)));
    return k < 1.0 ? 1u : u32(k);
}

EmpiricalBoundReport empirical_bound(const std::vector<u64>& grid, const SieveTable& table) {
    if (grid.empty()) throw DomainError("empirical bound: empty grid");
    for (u64 x : grid)
        if (x < 2) throw DomainError("empirical bound: grid points must be >= 2");

    EmpiricalBoundReport r;
    r.exponent = solve_cstar(1e-12).exponent;
    r.grid = grid;
    for (u64 x : grid) {
        u64 v = totient_image_up_to(table, x).count;
        double ratio = double(v) * std::pow(std::log(double(x)), r.exponent) / double(x);
        r.v_counts.push_back(v);
        r.ratios.push_back(ratio);
        if (ratio > r.sup_ratio) {
            r.sup_ratio = ratio;
            r.arg_sup = x;
        }
    }
    return r;
}

} // namespace tatl
