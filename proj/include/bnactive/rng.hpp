#ifndef BNACTIVE_RNG_HPP
#define BNACTIVE_RNG_HPP

#include <array>
#include <cstdint>
#include <span>
#include <string_view>

namespace bnactive {

// xoshiro256++ with splitmix64 seeding. Self-contained so that sampled
// results are bit-identical across standard libraries and platforms;
// std::uniform_int_distribution makes no such promise.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) {
    std::uint64_t x = seed;
    for (auto& s : state_) s = splitmix64(x);
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

  // Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0, bound), bound >= 1. Unbiased via rejection.
  int uniform_int(int bound) {
    const std::uint64_t b = static_cast<std::uint64_t>(bound);
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % b;
    std::uint64_t r;
    do {
      r = next_u64();
    } while (r >= limit);
    return static_cast<int>(r % b);
  }

  // Index drawn from a probability vector (assumed to sum to ~1).
  int categorical(std::span<const double> probs) {
    double u = uniform();
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < probs.size(); ++i) {
      acc += probs[i];
      if (u < acc) return static_cast<int>(i);
    }
    return static_cast<int>(probs.size()) - 1;
  }

  static std::uint64_t splitmix64(std::uint64_t& x) {
    std::uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  static std::uint64_t rotl(std::uint64_t v, int k) {
    return (v << k) | (v >> (64 - k));
  }

  std::array<std::uint64_t, 4> state_;
};

// Named-stream seed derivation: every stochastic stage owns a stream keyed
// by (master seed, label path), so results do not depend on evaluation
// order or worker count. Labels look like "trial=2/step=14/committee".
inline std::uint64_t derive_seed(std::uint64_t master, std::string_view path) {
  std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a over the label
  for (unsigned char c : path) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  std::uint64_t x = master;
  std::uint64_t mixed = Rng::splitmix64(x) ^ h;
  return Rng::splitmix64(mixed);
}

inline Rng stream(std::uint64_t master, std::string_view path) {
  return Rng(derive_seed(master, path));
}

}  // namespace bnactive

#endif
