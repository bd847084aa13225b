#include "otcnet/core/rng.hpp"

#include <array>

namespace otcnet {

namespace {

// FNV-1a; only needs to be stable, not cryptographic.
std::uint64_t tag_hash(std::string_view tag) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char ch : tag) {
        h ^= ch;
        h *= 1099511628211ULL;
    }
    return h;
}

std::seed_seq make_seq(std::uint64_t seed, std::string_view tag, std::uint64_t index) {
    const std::uint64_t th = tag_hash(tag);
    return std::seed_seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                         static_cast<std::uint32_t>(th),   static_cast<std::uint32_t>(th >> 32),
                         static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
}

}  // namespace

Rng make_stream(std::uint64_t seed, std::string_view tag, std::uint64_t index) {
    auto seq = make_seq(seed, tag, index);
    return Rng(seq);
}

std::uint64_t derive_seed(std::uint64_t seed, std::string_view tag, std::uint64_t index) {
    auto seq = make_seq(seed, tag, index);
    std::array<std::uint32_t, 2> out{};
    seq.generate(out.begin(), out.end());
    return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

}  // namespace otcnet
