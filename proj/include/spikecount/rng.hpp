#pragma once

#include <cstdint>
#include <random>

namespace spikecount {

using Engine = std::mt19937_64;

/// SplitMix64 finalizer: a bijective 64-bit mixer.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Seed for replication `counter` of work stream `stream` under `master`.
/// Depends only on the three integers, never on execution order.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream,
                                    std::uint64_t counter) noexcept {
    return splitmix64(splitmix64(splitmix64(master) ^ stream) + counter);
}

}  // namespace spikecount
