#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace aastar {

// splitmix64 finalizer; used to derive independent stream seeds.
constexpr std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

// Deterministically derives the seed of a named sub-stream from a root seed.
// All randomness in a run flows from one root seed through this function.
std::uint64_t split_seed(std::uint64_t root, std::string_view tag, std::uint64_t index = 0);

class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    double uniform() { return std::uniform_real_distribution<double>(0.0, 1.0)(gen_); }
    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(gen_); }
    double gaussian() { return normal_(gen_); }
    std::uint64_t next_u64() { return gen_(); }

    // 0 <= result < n
    std::uint64_t below(std::uint64_t n) { return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(gen_); }

    std::mt19937_64 &raw() { return gen_; }

  private:
    std::mt19937_64 gen_;
    std::normal_distribution<double> normal_{0.0, 1.0};
};

} // namespace aastar
