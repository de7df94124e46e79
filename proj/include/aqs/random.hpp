#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace aqs {

using Rng = std::mt19937_64;

/// 64-bit FNV-1a, used for substream names and config hashes.
std::uint64_t fnv1a64(std::string_view bytes) noexcept;

std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Independent generator for a named phase of an experiment. Draws in one
/// substream never shift draws in another, and per-iteration streams
/// (index) make permutation loops independent of evaluation order.
Rng substream(std::uint64_t master_seed, std::string_view name, std::uint64_t index = 0);

}  // namespace aqs
