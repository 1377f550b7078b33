#pragma once

#include <cstdint>

namespace salem {

// Stateless counter-based generator: a SplitMix64 finalizer applied to a
// (key, counter) pair. Identical inputs give identical outputs on every
// thread and platform.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

constexpr std::uint64_t counter_hash(std::uint64_t key, std::uint64_t counter) noexcept {
    return mix64(mix64(key) ^ (counter * 0xd1b54a32d192ed03ULL));
}

// Uniform double in [0, 1) with 53 random bits.
constexpr double counter_uniform(std::uint64_t key, std::uint64_t counter) noexcept {
    return static_cast<double>(counter_hash(key, counter) >> 11) * 0x1.0p-53;
}

// Uniform integer in [0, n) by multiply-shift.
constexpr std::uint32_t counter_below(std::uint64_t key, std::uint64_t counter, std::uint32_t n) noexcept {
    return static_cast<std::uint32_t>(((counter_hash(key, counter) >> 32) * n) >> 32);
}

}  // namespace salem
