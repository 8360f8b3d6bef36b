#pragma once
// Command-line front end: argument parsing into a RunConfig and the
// dispatcher.  Kept in the library so both the binary and the tests
// can drive it.

#include "tatl/sieve.hpp"

#include <optional>

namespace tatl {

struct UsageError : Error {
    using Error::Error;
};

enum class Command {
    help,
    sieve,
    vcount,
    gaps,
    rho,
    bound,
    constant,
    mertens,
    stirling,
    abel,
    verify,
};

struct RunConfig {
    Command command = Command::help;
    u64 limit = 0;
    u64 x = 0;
    u64 n = 0;
    u32 k = 1;
    u32 kmax = 0; // 0 = derive floor(log2 x)
    double tolerance = 1e-12;
    u32 quadrature_steps = 64;
    u64 x_max = 100000;
    std::optional<std::string> cache_path;
    std::string output_format = "json"; // "json" or "csv"
    std::optional<std::string> output_path;
    u64 memory_ceiling = kDefaultMemoryCeiling;
    std::string help_text; // filled for Command::help
};

// Throws UsageError on unknown flags, missing required values or
// out-of-range parameters.  Deterministic.
RunConfig parse_args(const std::vector<std::string>& args);

// Exit status 0 on success, 1 on computation or resource errors,
// 3 on cache corruption.  Messages go to stderr.
int run(const RunConfig& config);

} // namespace tatl
