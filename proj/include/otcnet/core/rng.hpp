#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace otcnet {

using Rng = std::mt19937_64;

/// Independent generator for a named substream of a top-level seed.
///
/// Streams are keyed by (seed, tag, index) so that results do not depend on
/// the order in which substreams are consumed or on thread scheduling.
Rng make_stream(std::uint64_t seed, std::string_view tag, std::uint64_t index = 0);

/// Child seed for a named substream; used when a seed must be handed on
/// (e.g. a training run inside a bootstrap replicate).
std::uint64_t derive_seed(std::uint64_t seed, std::string_view tag, std::uint64_t index = 0);

}  // namespace otcnet
