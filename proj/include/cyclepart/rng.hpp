#pragma once
#include <cassert>
#include <cstdint>
#include <random>
#include <vector>

namespace cyclepart {

// Seeded random source. The engine is std::mt19937_64 (whose output sequence
// is fixed by the standard); the derived draws below are hand-specified so
// that results are identical across standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next_u64() { return eng_(); }

  // Uniform integer in [lo, hi], inclusive. Rejection sampling, no modulo bias.
  int uniform_int(int lo, int hi) {
    assert(lo <= hi);
    std::uint64_t range = static_cast<std::uint64_t>(hi) - lo + 1;
    if (range == 1) return lo;
    std::uint64_t limit = ~std::uint64_t(0) - (~std::uint64_t(0) % range + 1) % range;
    std::uint64_t x;
    do {
      x = eng_();
    } while (x > limit);
    return lo + static_cast<int>(x % range);
  }

  std::size_t uniform_index(std::size_t n) {
    assert(n > 0);
    return static_cast<std::size_t>(uniform_int(0, static_cast<int>(n) - 1));
  }

  // Bernoulli(p) using the top 53 bits of one engine output.
  bool bernoulli(double p) {
    if (p <= 0.0) return false;
    if (p >= 1.0) return true;
    double u = static_cast<double>(eng_() >> 11) * 0x1.0p-53;
    return u < p;
  }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = uniform_index(i);
      std::swap(v[i - 1], v[j]);
    }
  }

  // k distinct elements of {0,...,n-1}, order unspecified but deterministic.
  std::vector<int> sample_without_replacement(int n, int k) {
    assert(0 <= k && k <= n);
    std::vector<int> pool(n);
    for (int i = 0; i < n; ++i) pool[i] = i;
    for (int i = 0; i < k; ++i) {
      int j = uniform_int(i, n - 1);
      std::swap(pool[i], pool[j]);
    }
    pool.resize(k);
    return pool;
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace cyclepart
