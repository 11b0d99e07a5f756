#pragma once

#include <array>
#include <cmath>
#include <cstdint>

namespace vlcm {

/// splitmix64 step; used to expand seeds into engine state.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// xoshiro256++ stream with a Box-Muller Gaussian source on top.
///
/// A stream is identified by (master seed, stream a, stream b).  Two streams
/// with different ids are statistically independent for simulation purposes,
/// and the mapping from ids to output is fixed, which is what makes results
/// independent of the number of workers.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : RngStream(seed, 0, 0) {}

  RngStream(std::uint64_t master_seed, std::uint64_t stream_a,
            std::uint64_t stream_b = 0) {
    std::uint64_t s = master_seed;
    (void)splitmix64(s);
    s ^= 0xa076'1d64'78bd'642fULL * (stream_a + 1);
    (void)splitmix64(s);
    s ^= 0xe703'7ed1'a0b4'28dbULL * (stream_b + 1);
    for (auto& word : state_) word = splitmix64(s);
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  /// Uniform in (0, 1]; never returns 0 so it is safe under log().
  double next_unit() {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  }

  /// Standard normal via Box-Muller; the second value of each pair is cached.
  double next_gaussian() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = next_unit();
    const double u2 = next_unit();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * M_PI * u2;
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
  }

  /// Uniformly distributed value with the requested number of low bits set
  /// at random, nbits in [1, 32].
  std::uint32_t next_bits(unsigned nbits) {
    return static_cast<std::uint32_t>(next_u64() >> (64 - nbits));
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  std::array<std::uint64_t, 4> state_{};
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace vlcm
