#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "flylsh/errors.hpp"

namespace flylsh {

/// Master seed for every random artifact in the library. Equal seeds plus
/// equal parameters give bit-identical projections, permutations and samples.
struct RngSeed {
  std::uint64_t value = 0;
};

/// splitmix64 finalizer; used to derive independent stream seeds.
inline constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Stream tags. A stream is identified by (seed, domain, index), so artifact
/// j can be regenerated without replaying streams 0..j-1.
enum class StreamDomain : std::uint64_t {
  sparse_row = 1,
  dense_row = 2,
  permutation = 3,
  random_data = 4,
  query_sample = 5,
  perturbation = 6,
  table = 7,
  algorithm = 8,
  misc = 9,
};

/// xoshiro256++ with splittable seeding. Output is fully specified, so equal
/// streams are reproducible across builds and platforms.
class Rng {
 public:
  static Rng stream(RngSeed seed, StreamDomain domain, std::uint64_t index = 0) {
    Rng r;
    std::uint64_t s = mix64(seed.value ^ mix64(static_cast<std::uint64_t>(domain)) ^
                            mix64(index + 0x71c9b75ad1e2f3a5ULL));
    for (auto& w : r.state_) {
      s = mix64(s);
      w = s;
    }
    if ((r.state_[0] | r.state_[1] | r.state_[2] | r.state_[3]) == 0) r.state_[0] = 1;
    return r;
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

  /// Uniform double in [0, 1) with 53 bits of precision.
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Unbiased uniform integer in [0, n).
  std::uint64_t bounded(std::uint64_t n) {
    if (n == 0) throw ParameterError("bounded: n must be positive");
    const std::uint64_t min = (-n) % n;
    for (;;) {
      const std::uint64_t x = next_u64();
      if (x >= min) return x % n;
    }
  }

  /// Standard normal via the Marsaglia polar method.
  double normal() {
    for (;;) {
      const double u = 2.0 * uniform01() - 1.0;
      const double v = 2.0 * uniform01() - 1.0;
      const double s = u * u + v * v;
      if (s > 0.0 && s < 1.0) return u * std::sqrt(-2.0 * std::log(s) / s);
    }
  }

  /// In-place Fisher-Yates shuffle.
  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::swap(v[i - 1], v[static_cast<std::size_t>(bounded(i))]);
    }
  }

  /// Floyd's algorithm: s distinct values from [0, n), returned ascending.
  std::vector<std::uint32_t> sample_without_replacement(std::uint64_t n, std::size_t s) {
    if (s > n) throw ParameterError("sample_without_replacement: s > n");
    std::vector<std::uint32_t> out;
    out.reserve(s);
    for (std::uint64_t j = n - s; j < n; ++j) {
      const auto t = static_cast<std::uint32_t>(bounded(j + 1));
      if (std::find(out.begin(), out.end(), t) == out.end()) {
        out.push_back(t);
      } else {
        out.push_back(static_cast<std::uint32_t>(j));
      }
    }
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  std::uint64_t state_[4] = {};
};

}  // namespace flylsh
