#pragma once

#include <cmath>
#include <cstdint>

namespace rpng {

// 64-bit finalizer (splitmix64 mixing function).
constexpr std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Derive an independent stream key from a seed and up to two lane ids.
// Streams keyed this way are stable under changes to window size or
// iteration order: the stream for (seed, edge, family) never depends on
// which other streams exist.
constexpr std::uint64_t stream_key(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0) {
    std::uint64_t k = mix64(seed ^ 0x5851f42d4c957f2dULL);
    k = mix64(k ^ mix64(a ^ 0x14057b7ef767814fULL));
    k = mix64(k ^ mix64(b ^ 0x735a2d97f2d4c9e3ULL));
    return k;
}

// Counter-based splittable generator: output n is mix64(key + n*gamma).
// Equivalent to splitmix64 with the key as initial state.
class SplitMix64 {
public:
    SplitMix64() : state_(0) {}
    explicit SplitMix64(std::uint64_t key) : state_(key) {}

    std::uint64_t next() {
        state_ += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform on (0, 1]: never returns 0, safe under log().
    double next_unit() {
        return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53;
    }

    // Exponential inter-arrival time with the given rate (> 0).
    double next_exponential(double rate) {
        return -std::log(next_unit()) / rate;
    }

    // Uniform integer in [0, n), n >= 1. Lemire's multiply-shift; the
    // modulo bias at 64 bits is far below anything observable here.
    std::uint64_t next_below(std::uint64_t n) {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(next()) * n) >> 64);
    }

    bool next_coin() { return (next() & 1u) != 0; }

private:
    std::uint64_t state_;
};

} // namespace rpng
