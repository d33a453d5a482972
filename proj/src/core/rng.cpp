#include "rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace stylesearch {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t fnv1a64(std::string_view text) {
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        hash ^= c;
        hash *= 0x100000001b3ULL;
    }
    return hash;
}

} // namespace

std::uint64_t derive_stream_seed(std::uint64_t master, std::string_view name) {
    std::uint64_t state = master ^ fnv1a64(name);
    splitmix64(state);
    return splitmix64(state);
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t value) {
    std::uint64_t state = seed ^ (value * 0x9e3779b97f4a7c15ULL);
    return splitmix64(state);
}

double RandomStream::next_normal() {
    // u1 in (0, 1] keeps the log finite.
    const double u1 = 1.0 - next_uniform();
    const double u2 = next_uniform();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * std::numbers::pi * u2);
}

std::uint64_t RandomStream::next_index(std::uint64_t bound) {
    if (bound == 0) {
        throw std::invalid_argument("RandomStream::next_index: bound must be positive");
    }
    // Multiply-high maps the full 64-bit draw onto [0, bound).
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(engine_()) * bound) >> 64);
}

} // namespace stylesearch
