// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <random>

namespace crossdip {

using Rng = std::mt19937_64;

// SplitMix64 finalizer. Used only to decorrelate seed material, never as the
// simulation generator itself.
constexpr std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Counter-based substream derivation: one independent generator per
// (master, stream) pair. A given pair always yields the same generator
// state, so Monte Carlo trials can be distributed over any number of
// workers without changing results.
inline Rng substream(std::uint64_t master, std::uint64_t stream) {
    return Rng(mix64(mix64(master) ^ mix64(stream)));
}

inline Rng substream(std::uint64_t master, std::uint64_t hi, std::uint64_t lo) {
    return Rng(mix64(mix64(master) ^ mix64(hi) ^ mix64(mix64(lo) + 0x632be59bd9b4e019ULL)));
}

} // namespace crossdip
