#pragma once

#include <cstdint>
#include <random>

namespace fraudnet {

// Seeds a generator from (seed, stream). Every seeded component uses its own
// stream constant so that two components handed the same user seed never
// replay each other's draws.
inline std::mt19937_64 seeded_rng(std::uint64_t seed, std::uint64_t stream) {
    std::seed_seq sequence{
        static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
        static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
    return std::mt19937_64(sequence);
}

namespace rng_stream {
inline constexpr std::uint64_t split = 1;
inline constexpr std::uint64_t synthetic = 2;
inline constexpr std::uint64_t smote = 3;
inline constexpr std::uint64_t init = 4;
inline constexpr std::uint64_t train = 5;
inline constexpr std::uint64_t corrupt = 6;
}  // namespace rng_stream

}  // namespace fraudnet
