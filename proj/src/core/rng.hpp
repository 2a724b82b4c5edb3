#ifndef AADMM_CORE_RNG_HPP
#define AADMM_CORE_RNG_HPP

#include <cmath>
#include <cstdint>
#include <vector>

namespace aadmm::rng {

// Counter-based generator "sm64ctr/1".
//
// Output k of stream (seed, stream) is
//   mix64(mix64(seed + GOLDEN*(stream+1)) + GOLDEN*(k+1))
// where mix64 is the SplitMix64 finalizer and GOLDEN = floor(2^64/phi).
// The scheme is pure integer arithmetic, so identical (seed, stream,
// counter) triples give identical outputs on every platform.

inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0)
      : key_(mix64(seed + kGolden * (stream + 1))) {}

  std::uint64_t next_u64() { return mix64(key_ + kGolden * (++counter_)); }

  // Uniform on the open interval (0, 1); never returns 0 or 1.
  double uniform() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  // Unbiased draw from {0, 1, ..., bound-1} by rejection.
  std::uint64_t uniform_below(std::uint64_t bound) {
    const std::uint64_t reject = (-bound) % bound;
    std::uint64_t x;
    do {
      x = next_u64();
    } while (x < reject);
    return x % bound;
  }

  // Standard normal via the Marsaglia polar method.
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * uniform() - 1.0;
      v = 2.0 * uniform() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * f;
    have_spare_ = true;
    return u * f;
  }

  // Laplace(0, scale) by inverse CDF.
  double laplace(double scale) {
    const double u = uniform() - 0.5;
    const double mag = -scale * std::log1p(-2.0 * std::abs(u));
    return u < 0 ? -mag : mag;
  }

  // First k entries of a partial Fisher-Yates shuffle of {0,...,n-1}.
  std::vector<std::uint64_t> sample_without_replacement(std::uint64_t n,
                                                        std::uint64_t k) {
    std::vector<std::uint64_t> pool(n);
    for (std::uint64_t i = 0; i < n; ++i) pool[i] = i;
    for (std::uint64_t i = 0; i < k; ++i) {
      const std::uint64_t j = i + uniform_below(n - i);
      std::swap(pool[i], pool[j]);
    }
    pool.resize(k);
    return pool;
  }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace aadmm::rng

#endif
