#include "tatl/sieve.hpp"

#include <bit>
#include <cstring>
#include <fstream>

static_assert(std::endian::native == std::endian::little,
              "cache I/O writes array memory directly and assumes little-endian");

namespace tatl {

u64 fnv1a64(const void* data, std::size_t len, u64 seed) {
    const unsigned char* p = static_cast<const unsigned char*>(data);
    u64 h = seed;
    for (std::size_t i = 0; i < len; ++i) {
        h ^= p[i];
        h *= 1099511628211ull;
    }
    return h;
}

namespace {

constexpr char kMagic[4] = {'T', 'A', 'T', 'L'};
constexpr u8 kVersion = 1;

struct Span {
    const char* data;
    std::size_t len;
};

// The four arrays over indices 1..limit, in file order.
std::vector<Span> body_spans(const SieveTable& t) {
    return {
        {reinterpret_cast<const char*>(t.spf.data() + 1), t.limit * sizeof(u32)},
        {reinterpret_cast<const char*>(t.phi.data() + 1), t.limit * sizeof(u32)},
        {reinterpret_cast<const char*>(t.mobius.data() + 1), t.limit * sizeof(i8)},
        {reinterpret_cast<const char*>(t.omega.data() + 1), t.limit * sizeof(u8)},
    };
}

} // namespace

void save_sieve(const SieveTable& table, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw ResourceError("cannot open cache file for writing: " + path.string());
    out.write(kMagic, 4);
    out.put(char(kVersion));
    u64 limit = table.limit;
    out.write(reinterpret_cast<const char*>(&limit), 8);
    u64 checksum = 14695981039346656037ull;
    for (const Span& s : body_spans(table)) {
        out.write(s.data, std::streamsize(s.len));
        checksum = fnv1a64(s.data, s.len, checksum);
    }
    out.write(reinterpret_cast<const char*>(&checksum), 8);
    out.flush();
    if (!out)
        throw ResourceError("write to cache file failed: " + path.string());
}

SieveTable load_sieve(const std::filesystem::path& path, u64 memory_ceiling) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CacheError("cannot open cache file: " + path.string());

    char magic[4];
    in.read(magic, 4);
    if (!in || std::memcmp(magic, kMagic, 4) != 0)
        throw CacheError("bad cache magic in " + path.string());
    int version = in.get();
    if (version != kVersion)
        throw CacheError("unsupported cache version " + std::to_string(version) +
                         " in " + path.string());
    u64 limit = 0;
    in.read(reinterpret_cast<char*>(&limit), 8);
    if (!in || limit == 0 || limit > 0xFFFFFFFFull)
        throw CacheError("implausible cache limit in " + path.string());
    if ((limit + 1) * kBytesPerEntry > memory_ceiling)
        throw ResourceError("cached sieve of limit " + std::to_string(limit) +
                            " exceeds the memory ceiling of " +
                            std::to_string(memory_ceiling) + " bytes");

    SieveTable t;
    t.limit = limit;
    t.spf.assign(limit + 1, 0);
    t.phi.assign(limit + 1, 0);
    t.mobius.assign(limit + 1, 0);
    t.omega.assign(limit + 1, 0);

    u64 checksum = 14695981039346656037ull;
    for (const Span& s : body_spans(t)) {
        in.read(const_cast<char*>(s.data), std::streamsize(s.len));
        if (std::size_t(in.gcount()) != s.len)
            throw CacheError("truncated cache body in " + path.string());
        checksum = fnv1a64(s.data, s.len, checksum);
    }
    u64 stored = 0;
    in.read(reinterpret_cast<char*>(&stored), 8);
    if (!in || in.gcount() != 8)
        throw CacheError("missing cache checksum in " + path.string());
    if (stored != checksum)
        throw CacheError("cache checksum mismatch in " + path.string());
    if (in.peek() != std::ifstream::traits_type::eof())
        throw CacheError("trailing bytes after cache checksum in " + path.string());
    return t;
}

} // namespace tatl
