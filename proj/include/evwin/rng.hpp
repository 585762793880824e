#ifndef EVWIN_RNG_HPP_
#define EVWIN_RNG_HPP_

#include <cstdint>
#include <limits>

namespace evwin {

/// SplitMix64 finaliser; a bijective 64-bit mix.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Counter-based sub-seed: a pure function of (base seed, stream index, tag),
/// so work items can be generated in any order or on any thread.
constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index, std::uint64_t tag) {
  return mix64(mix64(mix64(base) ^ index) ^ (tag * 0xd1b54a32d192ed03ULL));
}

/// SplitMix64 generator. Small state, cheap to construct per work item.
__extension__ typedef unsigned __int128 Uint128;

class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  constexpr explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  constexpr result_type operator()() {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform integer in [0, bound) by Lemire's multiply-shift with rejection;
  /// unlike std::uniform_int_distribution the sequence is the same on every
  /// standard library.
  std::uint64_t below(std::uint64_t bound) {
    Uint128 m = static_cast<Uint128>((*this)()) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
      const std::uint64_t threshold = (0 - bound) % bound;
      while (low < threshold) {
        m = static_cast<Uint128>((*this)()) * bound;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

}  // namespace evwin

#endif  // EVWIN_RNG_HPP_
