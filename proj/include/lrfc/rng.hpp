#pragma once

#include <cstdint>

namespace lrfc {

// splitmix64 finalizer
inline std::uint64_t mix64(std::uint64_t x) {
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Counter-based draws: value i of the stream named by `key`. Stateless, so
// results are identical under any batching or thread layout.
inline std::uint64_t rng_at(std::uint64_t key, std::uint64_t i) {
    return mix64(key + (i + 1) * 0x9e3779b97f4a7c15ULL);
}

// Derive an independent sub-stream key (per column, per trial, ...).
inline std::uint64_t rng_key(std::uint64_t key, std::uint64_t tag) {
    return mix64(key ^ mix64(tag ^ 0x517cc1b727220a95ULL));
}

inline double to_unit(std::uint64_t r) {  // [0,1) with 53 random bits
    return static_cast<double>(r >> 11) * 0x1.0p-53;
}

inline bool bernoulli(std::uint64_t r, double p) { return to_unit(r) < p; }

}  // namespace lrfc
