#pragma once
// Numeric identity checks: Abel partial summation, prime counting,
// the prime-power formula for rho_1, Mertens partial sums and the
// Stirling constant estimate.

#include "tatl/sieve.hpp"

namespace tatl {

// Weighted point set for the Abel identity.  When f_prime is absent
// the integral against the staircase alpha(t) is evaluated exactly,
// segment by segment, from f alone; when f_prime is supplied the
// segments are integrated by composite Simpson quadrature instead.
struct AbelInput {
    std::vector<double> points;  // strictly increasing, positive
    std::vector<double> weights; // same length
    std::function<double(double)> f;
    std::function<double(double)> f_prime; // empty -> exact segments
    double x = 0;                // endpoint, >= points.front()
};

// |LHS - RHS| with LHS = sum of a_n f(lambda_n) over lambda_n <= x and
// RHS = alpha(x) f(x) - integral of alpha f'.  Throws DomainError when
// x < points.front().
double abel_check(const AbelInput& input, u32 quadrature_steps);

// Exact count of primes <= x.  Requires x <= table.limit.
u64 prime_pi(const SieveTable& table, u64 x);

// Number of prime powers p^e <= x, e >= 1 (equals rho_1).
u64 prime_power_count(const SieveTable& table, u64 x);

// true iff prime_power_count(x) equals rho_1(x) from the census.
bool rho1_formula_check(const SieveTable& table, u64 x);

struct MertensReport {
    u64 x = 0;
    double sum_inv_p = 0;        // sum of 1/p over primes p <= x
    double sum_logp_over_p = 0;  // sum of ln p / p
    double m_estimate = 0;       // sum_inv_p - ln ln x
    double first_residual = 0;   // sum_logp_over_p - ln x
};

// Compensated sums over the sieve primes.  Requires 3 <= x <= limit.
MertensReport mertens_sums(const SieveTable& table, u64 x);

struct StirlingReport {
    u64 n = 0;
    double ln_factorial = 0; // compensated sum of ln m, m <= n
    double main_term = 0;    // n ln n - n + ln sqrt(n)
    double c_estimate = 0;   // ln_factorial - main_term
};

StirlingReport stirling_eval(u64 n);

namespace serial {
u64 prime_pi(const SieveTable& table, u64 x);
MertensReport mertens_sums(const SieveTable& table, u64 x);
double ln_factorial(u64 n);
}

} // namespace tatl
