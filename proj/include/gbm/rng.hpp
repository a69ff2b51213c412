#pragma once

#include <cmath>
#include <cstdint>

namespace gbm::rng {

// SplitMix64 (Steele/Lea/Flood), fixed-increment variant by Vigna.
// 64 bits of state, passes BigCrush, and splitting into substreams is a
// single integer mix, which is all the reproducible parallel path
// generation here needs.
inline constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ULL;

inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() { return mix64(state_ += kGoldenGamma); }

  // Uniform on the open interval (0,1); never returns 0, so log(u) is safe.
  double next_open01() {
    return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53;
  }

 private:
  std::uint64_t state_;
};

// Substream seed = the (stream+1)-th output of the SplitMix64 sequence
// seeded at `master`. Distinct streams get distinct, well-mixed seeds.
inline std::uint64_t substream_seed(std::uint64_t master, std::uint64_t stream) {
  return mix64(master + (stream + 1) * kGoldenGamma);
}

// Standard normals from SplitMix64 uniforms via Box-Muller (the basic
// trigonometric form; pairs are cached, no rejection).
class NormalStream {
 public:
  explicit NormalStream(std::uint64_t seed) : gen_(seed) {}

  double next() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = gen_.next_open01();
    const double u2 = gen_.next_open01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * 3.141592653589793238462643383279502884 * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

 private:
  SplitMix64 gen_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace gbm::rng
