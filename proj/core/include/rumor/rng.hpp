#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace rumor {

/// Random engine used by every stochastic routine in the library.
using Rng = std::mt19937_64;

/// SplitMix64 finaliser. Bijective on 64-bit words.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Derives a child seed from a parent seed and a path of integer keys, e.g.
/// derive_seed(master, {family_index, n, trial}). Stable across platforms.
std::uint64_t derive_seed(std::uint64_t parent,
                          std::initializer_list<std::uint64_t> keys) noexcept;

/// FNV-1a over a string; used to turn symbolic keys into seed path entries.
std::uint64_t hash_label(const char* label) noexcept;

}  // namespace rumor
