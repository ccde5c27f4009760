#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <limits>

namespace hodgewalk {

/**
 * Counter-based SplitMix64: output n is the SplitMix64 finalizer applied to
 * seed + n * golden. The full state is (seed, counter), so a stream can be
 * resumed or replayed from any position.
 */
class CounterRng {
 public:
  using result_type = std::uint64_t;

  explicit CounterRng(std::uint64_t seed = 0, std::uint64_t counter = 0) noexcept
      : seed_(seed), counter_(counter) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  result_type operator()() noexcept {
    std::uint64_t z = seed_ + (++counter_) * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform on {0, ..., m-1} by rejection under the next power-of-two mask.
  std::size_t uniform_index(std::size_t m) noexcept {
    if (m <= 1) return 0;
    const std::uint64_t mask = std::bit_ceil(static_cast<std::uint64_t>(m)) - 1;
    for (;;) {
      const std::uint64_t v = (*this)() & mask;
      if (v < m) return static_cast<std::size_t>(v);
    }
  }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform01() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t counter() const noexcept { return counter_; }

 private:
  std::uint64_t seed_;
  std::uint64_t counter_;
};

}  // namespace hodgewalk
