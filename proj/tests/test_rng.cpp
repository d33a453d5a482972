#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <vector>

#include "core/rng.hpp"

using stylesearch::RandomStream;
using stylesearch::derive_stream_seed;
using stylesearch::mix_seed;

TEST_CASE("identical seeds replay identical sequences") {
    RandomStream a(123456789);
    RandomStream b(123456789);
    for (int i = 0; i < 1000; ++i) {
        CHECK(a.next_u64() == b.next_u64());
    }
}

TEST_CASE("derived stream seeds separate by name and master") {
    const std::uint64_t master = 42;
    CHECK(derive_stream_seed(master, "init") != derive_stream_seed(master, "mutation"));
    CHECK(derive_stream_seed(master, "init") != derive_stream_seed(master + 1, "init"));
    CHECK(derive_stream_seed(master, "init") == derive_stream_seed(master, "init"));
    CHECK(mix_seed(master, 0) != mix_seed(master, 1));
}

TEST_CASE("uniform draws stay in [0,1) with mean near one half") {
    RandomStream rng(7);
    double sum = 0.0;
    const int n = 100000;
    for (int i = 0; i < n; ++i) {
        const double u = rng.next_uniform();
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
        sum += u;
    }
    CHECK(std::abs(sum / n - 0.5) < 0.01);
}

TEST_CASE("normal draws have standard moments") {
    RandomStream rng(11);
    const int n = 100000;
    double sum = 0.0;
    double sum_sq = 0.0;
    for (int i = 0; i < n; ++i) {
        const double z = rng.next_normal();
        sum += z;
        sum_sq += z * z;
    }
    const double mean = sum / n;
    const double variance = sum_sq / n - mean * mean;
    CHECK(std::abs(mean) < 0.02);
    CHECK(std::abs(variance - 1.0) < 0.03);
}

TEST_CASE("next_index covers [0,bound) roughly uniformly") {
    RandomStream rng(5);
    std::vector<int> counts(10, 0);
    const int n = 100000;
    for (int i = 0; i < n; ++i) {
        const auto idx = rng.next_index(10);
        REQUIRE(idx < 10);
        ++counts[idx];
    }
    for (const int c : counts) {
        CHECK(std::abs(c - n / 10) < 600);
    }
    CHECK_THROWS(rng.next_index(0));
}
