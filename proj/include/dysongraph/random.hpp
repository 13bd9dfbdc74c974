#pragma once

// Counter-based random streams: every (seed, tag, index) triple yields an
// independent 64-bit word, so results never depend on evaluation order.

#include "dysongraph/rational.hpp"

#include <cstdint>

namespace dysongraph {

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

constexpr std::uint64_t stream_word(std::uint64_t seed, std::uint64_t tag, std::uint64_t index) noexcept {
    return splitmix64(splitmix64(seed ^ splitmix64(tag)) + index);
}

/// Top 53 bits of a word: a uniform integer in [0, 2^53).
constexpr std::uint64_t unit53(std::uint64_t word) noexcept { return word >> 11; }

/// ceil(p * 2^53) clamped to [0, 2^53], so that unit53(w) < threshold holds
/// with probability exactly p for p a multiple of 2^-53 and to within 2^-53
/// otherwise.
std::uint64_t probability_threshold(const Rational& p);

}  // namespace dysongraph
