#pragma once
// The exponent constant: root of g(c) = 1 - c + c ln c - c ln 2 on
// (0,1), the two exponent branches it balances, the cutoff index
// k(x) = ceil(c ln ln x), and the empirical density-bound ratios.

#include "tatl/image.hpp"

namespace tatl {

struct ExponentSolution {
    double c_star = 0;    // root in (0,1)
    double exponent = 0;  // c_star * ln 2
    double residual = 0;  // |g(c_star)|
    u32 iterations = 0;   // bisection + polish steps
    double bracket_lo = 0;
    double bracket_hi = 0;
};

double branch_g(double c); // 1 - c + c ln c - c ln 2
double branch_g_prime(double c); // ln c - ln 2

// Bisection on (1e-6, 1 - 1e-6), then Newton polish.  Deterministic:
// repeated calls are bit-identical.  Requires tolerance >= 1e-14.
ExponentSolution solve_cstar(double tolerance);

struct Branches {
    double first = 0;  // 1 - c + c ln c
    double second = 0; // c ln 2
    double min = 0;
};

// Throws DomainError outside (0,1).  The branches cross at c_star.
Branches exponent_branches(double c);

// ceil(c ln ln x), at least 1.  Throws DomainError for x <= e.
u32 k_of_x(double x, double c);

struct EmpiricalBoundReport {
    std::vector<u64> grid;
    std::vector<u64> v_counts;
    std::vector<double> ratios; // v_count(x) (ln x)^exponent / x
    double exponent = 0;
    double sup_ratio = 0;
    u64 arg_sup = 0;
};

// Ratios of the proven-shape bound over the grid; sup is an observed
// estimate of the constant, not a proof.  Propagates
// CompletenessError when the table cannot certify some grid point.
EmpiricalBoundReport empirical_bound(const std::vector<u64>& grid,
                                     const SieveTable& table);

} // namespace tatl
