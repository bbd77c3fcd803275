// rng.hpp -- seeding discipline shared by every randomized routine.
//
// All randomness flows from a single 64-bit master seed. Replicate i of an
// experiment uses derive_seed(master, i), a keyed 128-bit mix, so results are
// independent of thread count and schedule.
#pragma once

#include <cstdint>
#include <random>

namespace critlab {

using Rng = std::mt19937_64;

namespace detail {
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}
} // namespace detail

// Keyed hash of (master, stream): two splitmix64 lanes folded together, so the
// pair is mixed through 128 bits of state before reduction.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
    std::uint64_t lo = master ^ 0x2545f4914f6cdd1dULL;
    std::uint64_t hi = stream ^ 0x9e3779b97f4a7c15ULL;
    std::uint64_t a = detail::splitmix64(lo);
    std::uint64_t b = detail::splitmix64(hi);
    std::uint64_t c = a ^ (b + 0x632be59bd9b4e019ULL + (a << 6) + (a >> 2));
    return detail::splitmix64(c);
}

inline Rng make_rng(std::uint64_t master, std::uint64_t stream = 0) {
    return Rng(derive_seed(master, stream));
}

// Fresh seed from system entropy (used by the CLI when --seed is omitted).
inline std::uint64_t entropy_seed() {
    std::random_device rd;
    return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

inline double uniform01(Rng& rng) {
    return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

inline double exponential(Rng& rng, double rate) {
    return std::exponential_distribution<double>(rate)(rng);
}

} // namespace critlab
