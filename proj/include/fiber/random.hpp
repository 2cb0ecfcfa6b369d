#pragma once

#include <cstdint>
#include <string_view>

#include "fiber/decompose.hpp"

namespace fiber {

/// SplitMix64 (Steele, Lea, Flood 2014). Chosen over the <random> engines
/// because std::uniform_real_distribution is not specified bit-for-bit, and
/// reports must match across standard libraries.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t state) noexcept : state_(state) {}

  std::uint64_t next() noexcept {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1) with 53 random bits.
  double unit() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * unit(); }

 private:
  std::uint64_t state_;
};

/// FNV-1a, used to give each named property its own stream family.
constexpr std::uint64_t stream_id(std::string_view name) noexcept {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (char c : name) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001B3ULL;
  }
  return h;
}

/// Generator for sample `index` of stream `stream`. Depends only on its
/// arguments, so samples can be drawn in any order on any thread.
inline SplitMix64 sample_stream(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) noexcept {
  SplitMix64 mix(seed ^ stream);
  const std::uint64_t base = mix.next();
  SplitMix64 at(base + index * 0xD1B54A32D192ED03ULL);
  return SplitMix64(at.next());
}

inline AlgebraElement random_element(SplitMix64& rng, const Signature& sig, double lo, double hi) {
  std::vector<double> c(sig.dimension());
  for (auto& v : c) v = rng.uniform(lo, hi);
  return AlgebraElement(sig, std::move(c));
}

}  // namespace fiber
