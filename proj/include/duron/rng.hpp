#ifndef DURON_RNG_HPP
#define DURON_RNG_HPP

#include <cstdint>
#include <string_view>

namespace duron {

// SplitMix64 (Steele/Lea/Vigna). All randomized checks draw from this
// generator so a report is reproducible from its seed alone, independent of
// platform or standard-library version. The exact algorithm:
//   state += 0x9E3779B97F4A7C15
//   z = state
//   z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//   z = (z ^ (z >> 27)) * 0x94D049BB133111EB
//   return z ^ (z >> 31)
// Named substreams are derived by XORing the seed with the FNV-1a hash of the
// stream label.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0,1): top 53 bits scaled by 2^-53.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Uniform integer in [lo, hi], inclusive. Plain modulo; the tiny bias is
  // irrelevant here and keeps the mapping trivially portable.
  long long uniform_int(long long lo, long long hi) {
    return lo + static_cast<long long>(next() % static_cast<std::uint64_t>(hi - lo + 1));
  }

  static std::uint64_t fnv1a(std::string_view text) {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (char c : text) {
      h ^= static_cast<unsigned char>(c);
      h *= 0x100000001B3ULL;
    }
    return h;
  }

  static SplitMix64 stream(std::uint64_t seed, std::string_view label) {
    return SplitMix64(seed ^ fnv1a(label));
  }

 private:
  std::uint64_t state_;
};

}  // namespace duron

#endif
