#include "tatl/analytic.hpp"
#include "tatl/census.hpp"

namespace tatl {

double abel_check(const AbelInput& input, u32 quadrature_steps) {
    const auto& pts = input.points;
    const auto& wts = input.weights;
    if (pts.empty()) throw DomainError("abel check: empty point sequence");
    if (pts.size() != wts.size())
        throw DomainError("abel check: points and weights differ in length");
    if (pts.front() <= 0) throw DomainError("abel check: points must be positive");
    for (std::size_t i = 1; i < pts.size(); ++i)
        if (pts[i] <= pts[i - 1])
            throw DomainError("abel check: points must be strictly increasing");
    if (input.x < pts.front())
        throw DomainError("abel check: x below the first point");
    if (!input.f) throw DomainError("abel check: f is required");
    if (quadrature_steps < 1) throw DomainError("abel check: need >= 1 panels");

    std::size_t m = 0;
    while (m < pts.size() && pts[m] <= input.x) ++m; // m >= 1

    // alpha[i] = w_0 + ... + w_i, the staircase height on [pts[i], pts[i+1]).
    std::vector<double> alpha(m);
    Kahan acc;
    for (std::size_t i = 0; i < m; ++i) {
        acc.add(wts[i]);
        alpha[i] = acc.value();
    }

    Kahan lhs;
    for (std::size_t i = 0; i < m; ++i) lhs.add(wts[i] * input.f(pts[i]));

    // integral of alpha(t) f'(t) over [pts[0], x], segment by segment;
    // alpha is constant on each segment, so the exact value per
    // segment is alpha[i] (f(b) - f(a)).
    Kahan integral;
    for (std::size_t i = 0; i < m; ++i) {
        double a = pts[i];
        double b = (i + 1 < m) ? pts[i + 1] : input.x;
        if (b <= a) continue;
        if (!input.f_prime) {
            integral.add(alpha[i] * (input.f(b) - input.f(a)));
        } else {
            double h = (b - a) / double(quadrature_steps);
            for (u32 j = 0; j < quadrature_steps; ++j) {
                double t0 = a + h * j;
                double t1 = (j + 1 == quadrature_steps) ? b : a + h * (j + 1);
                double tm = 0.5 * (t0 + t1);
                integral.add(alpha[i] * (t1 - t0) / 6.0 *
                             (input.f_prime(t0) + 4.0 * input.f_prime(tm) + input.f_prime(t1)));
            }
        }
    }
    double rhs = alpha[m - 1] * input.f(input.x) - integral.value();
    return std::abs(lhs.value() - rhs);
}

u64 prime_pi(const SieveTable& table, u64 x) {
    if (x > table.limit)
        throw RangeError("prime pi: x = " + std::to_string(x) + " outside table range [1, " +
                         std::to_string(table.limit) + "]");
    u64 count = 0;
#ifdef _OPENMP
#pragma omp parallel for schedule(static) reduction(+ : count)
#endif
    for (u64 n = 2; n <= x; ++n) count += table.spf[n] == n;
    return count;
}

u64 prime_power_count(const SieveTable& table, u64 x) {
    if (x > table.limit)
        throw RangeError("prime power count: x = " + std::to_string(x) +
                         " outside table range [1, " + std::to_string(table.limit) + "]");
    u64 count = 0;
#ifdef _OPENMP
#pragma omp parallel for schedule(static) reduction(+ : count)
#endif
    for (u64 n = 2; n <= x; ++n) {
        if (table.spf[n] != n) continue;
        u64 pe = n;
        u64 e = 1;
        while (pe <= x / n) {
            pe *= n;
            ++e;
        }
        count += e;
    }
    return count;
}

bool rho1_formula_check(const SieveTable& table, u64 x) {
    if (x < 1) throw DomainError("rho1 formula check: x must be positive");
    u64 rho1 = x >= 2 ? rho_table(table, x, 1).rho(1) : 0;
    return prime_power_count(table, x) == rho1;
}

MertensReport mertens_sums(const SieveTable& table, u64 x) {
    if (x < 3) throw DomainError("mertens sums: x must be >= 3");
    if (x > table.limit)
        throw RangeError("mertens sums: x = " + std::to_string(x) +
                         " outside table range [1, " + std::to_string(table.limit) + "]");
    const u32* spf = table.spf.data();
    MertensReport r;
    r.x = x;
    r.sum_inv_p =
        blocked_sum(2, x, [spf](u64 n) { return spf[n] == n ? 1.0 / double(n) : 0.0; });
    r.sum_logp_over_p = blocked_sum(
        2, x, [spf](u64 n) { return spf[n] == n ? std::log(double(n)) / double(n) : 0.0; });
    r.m_estimate = r.sum_inv_p - std::log(std::log(double(x)));
    r.first_residual = r.sum_logp_over_p - std::log(double(x));
    return r;
}

StirlingReport stirling_eval(u64 n) {
    if (n < 1) throw DomainError("stirling: n must be positive");
    StirlingReport r;
    r.n = n;
    r.ln_factorial = blocked_sum(2, n, [](u64 m) { return std::log(double(m)); });
    double dn = double(n);
    r.main_term = dn * std::log(dn) - dn + 0.5 * std::log(dn);
    r.c_estimate = r.ln_factorial - r.main_term;
    return r;
}

namespace serial {

u64 prime_pi(const SieveTable& table, u64 x) {
    u64 count = 0;
    for (u64 n = 2; n <= x; ++n) count += table.spf[n] == n;
    return count;
}

MertensReport mertens_sums(const SieveTable& table, u64 x) {
    MertensReport r;
    r.x = x;
    Kahan inv, lg;
    for (u64 n = 2; n <= x; ++n)
        if (table.spf[n] == n) {
            inv.add(1.0 / double(n));
            lg.add(std::log(double(n)) / double(n));
        }
    r.sum_inv_p = inv.value();
    r.sum_logp_over_p = lg.value();
    r.m_estimate = r.sum_inv_p - std::log(std::log(double(x)));
    r.first_residual = r.sum_logp_over_p - std::log(double(x));
    return r;
}

double ln_factorial(u64 n) {
    Kahan acc;
    for (u64 m = 2; m <= n; ++m) acc.add(std::log(double(m)));
    return acc.value();
}

} // namespace serial

} // namespace tatl
