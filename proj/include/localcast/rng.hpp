#pragma once

#include <cstdint>
#include <limits>

namespace localcast::rng {

inline constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Stateless 64-bit draw keyed by (seed, stream, counter). Streams are
/// node ids or trial indices; counters are slots.
inline constexpr std::uint64_t bits(std::uint64_t seed, std::uint64_t stream,
                                    std::uint64_t counter) noexcept {
  std::uint64_t h = splitmix64(seed ^ 0x6a09e667f3bcc909ULL);
  h = splitmix64(h ^ stream);
  return splitmix64(h ^ (counter * 0xd1342543de82ef95ULL));
}

/// Uniform double in [0, 1) with 53 random bits.
inline constexpr double uniform(std::uint64_t seed, std::uint64_t stream,
                                std::uint64_t counter) noexcept {
  return static_cast<double>(bits(seed, stream, counter) >> 11) * 0x1.0p-53;
}

/// UniformRandomBitGenerator over one (seed, stream) pair, for use with
/// <random> distributions.
class CounterEngine {
 public:
  using result_type = std::uint64_t;

  CounterEngine(std::uint64_t seed, std::uint64_t stream) noexcept
      : seed_(seed), stream_(stream) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }
  result_type operator()() noexcept { return bits(seed_, stream_, counter_++); }
  double uniform01() noexcept {
    return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
  }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t counter_ = 0;
};

}  // namespace localcast::rng
