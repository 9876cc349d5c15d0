#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace trajregion {

using Rng = std::mt19937_64;

/// Seed for an independent substream named by (seed, label, indices).
/// Streams for different indices do not depend on the order in which they
/// are created, which keeps parallel work reproducible.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t label, std::initializer_list<std::uint64_t> indices = {});

/// Fixed stream labels.
namespace stream {
inline constexpr std::uint64_t trajectory = 0x7472616aULL;
inline constexpr std::uint64_t restart = 0x72737472ULL;
inline constexpr std::uint64_t task = 0x7461736bULL;
} // namespace stream

} // namespace trajregion
