// Benchmark of the parallel kernels against their serial reference
// implementations.  Also asserts that the two outputs agree, so a run
// doubles as a differential test at full scale.

#include "tatl/analytic.hpp"
#include "tatl/census.hpp"
#include "tatl/image.hpp"

#include <chrono>
#include <cstdio>
#include <string>

using namespace tatl;

namespace {

double seconds(std::chrono::steady_clock::time_point a,
               std::chrono::steady_clock::time_point b) {
    return std::chrono::duration<double>(b - a).count();
}

template <class F> double timed(F&& f) {
    auto a = std::chrono::steady_clock::now();
    f();
    auto b = std::chrono::steady_clock::now();
    return seconds(a, b);
}

int failures = 0;

void row(const std::string& name, double serial_s, double parallel_s, bool match) {
    std::printf("%-24s %10.3fs %10.3fs %7.2fx  %s\n", name.c_str(), serial_s, parallel_s,
                parallel_s > 0 ? serial_s / parallel_s : 0.0, match ? "match" : "MISMATCH");
    failures += match ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    u64 limit = 20000000;
    if (argc > 1) limit = std::stoull(argv[1]);
    std::printf("sieve limit %llu, %d thread(s)\n", (unsigned long long)limit,
                omp_get_max_threads());

    auto t0 = std::chrono::steady_clock::now();
    SieveTable table = build_sieve(limit);
    auto t1 = std::chrono::steady_clock::now();
    std::printf("build_sieve: %.3fs (single-writer by design)\n\n", seconds(t0, t1));
    std::printf("%-24s %11s %11s %8s\n", "kernel", "serial", "parallel", "speedup");

    u64 x_img = limit / 7; // keeps the refined scan bound inside the table
    while (required_preimage_limit(x_img) > limit) x_img /= 2;

    {
        u64 scan = required_preimage_limit(x_img);
        std::vector<u64> sbits, pbits;
        double s = timed([&] { sbits = serial::image_bits(table, x_img, scan); });
        double p = timed([&] { pbits = totient_image_up_to(table, x_img).bits; });
        row("image_bits(x=" + std::to_string(x_img) + ")", s, p, sbits == pbits);
    }
    {
        std::vector<u64> sc, pc;
        double s = timed([&] { sc = serial::rho_counts(table, limit, 12); });
        double p = timed([&] { pc = rho_table(table, limit, 12).counts; });
        row("rho_counts", s, p, sc == pc);
    }
    {
        std::vector<u64> sd, pd;
        double s = timed([&] { sd = serial::divisibility_counterexamples(table, limit, 8); });
        double p = timed([&] { pd = divisibility_counterexamples(table, limit, 8); });
        row("divisibility(k=8)", s, p, sd == pd);
    }
    {
        u64 sp = 0, pp = 0;
        double s = timed([&] { sp = serial::prime_pi(table, limit); });
        double p = timed([&] { pp = prime_pi(table, limit); });
        row("prime_pi", s, p, sp == pp);
    }
    {
        MertensReport sm, pm;
        double s = timed([&] { sm = serial::mertens_sums(table, limit); });
        double p = timed([&] { pm = mertens_sums(table, limit); });
        bool close = std::abs(sm.sum_inv_p - pm.sum_inv_p) < 1e-12 &&
                     std::abs(sm.sum_logp_over_p - pm.sum_logp_over_p) < 1e-12;
        row("mertens_sums", s, p, close);
    }
    {
        double sv = 0, pv = 0;
        double s = timed([&] { sv = serial::ln_factorial(limit); });
        double p = timed([&] { pv = stirling_eval(limit).ln_factorial; });
        row("ln_factorial", s, p, std::abs(sv - pv) < 1e-9 * std::abs(sv));
    }

    if (failures) {
        std::printf("\n%d kernel(s) disagreed\n", failures);
        return 1;
    }
    std::printf("\nall kernels agree\n");
    return 0;
}
