#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace stylesearch {

// Derives the seed for a named substream from a master seed. Streams named
// differently are statistically independent; the same (master, name) pair
// always yields the same stream.
std::uint64_t derive_stream_seed(std::uint64_t master, std::string_view name);

// Folds an extra value (e.g. a grid cell index) into an already derived seed.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t value);

// Deterministic random stream with a fixed draw protocol. mt19937_64 output
// is fully specified by the standard and the transforms below avoid the
// implementation-defined std::*_distribution classes, so sequences are
// reproducible across platforms.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform on [0, 1) with 53 random bits.
    double next_uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    // Standard normal via Box-Muller; consumes exactly two uniforms per call.
    double next_normal();

    // Uniform index in [0, bound). bound must be positive.
    std::uint64_t next_index(std::uint64_t bound);

    bool next_bernoulli(double p) { return next_uniform() < p; }

private:
    std::mt19937_64 engine_;
};

} // namespace stylesearch
