#include "cyclepart/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#define CP_X86_64 1
#include <immintrin.h>
#endif

namespace cyclepart::kernels {

std::size_t count_ones_scalar(const std::uint64_t* w, std::size_t nwords) {
  std::size_t total = 0;
  for (std::size_t i = 0; i < nwords; ++i) total += __builtin_popcountll(w[i]);
  return total;
}

std::size_t count_and_scalar(const std::uint64_t* a, const std::uint64_t* b,
                             std::size_t nwords) {
  std::size_t total = 0;
  for (std::size_t i = 0; i < nwords; ++i)
    total += __builtin_popcountll(a[i] & b[i]);
  return total;
}

std::size_t count_andnot_scalar(const std::uint64_t* a, const std::uint64_t* b,
                                std::size_t nwords) {
  std::size_t total = 0;
  for (std::size_t i = 0; i < nwords; ++i)
    total += __builtin_popcountll(a[i] & ~b[i]);
  return total;
}

#ifdef CP_X86_64

// In-register popcount: per-nibble lookup with vpshufb, then horizontal sums
// of byte counts via vpsadbw. Accumulates into four 64-bit lanes.
__attribute__((target("avx2"))) static inline __m256i popcount256(__m256i v) {
  const __m256i lut = _mm256_setr_epi8(0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3,
                                       3, 4, 0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3,
                                       2, 3, 3, 4);
  const __m256i low_mask = _mm256_set1_epi8(0x0f);
  __m256i lo = _mm256_and_si256(v, low_mask);
  __m256i hi = _mm256_and_si256(_mm256_srli_epi16(v, 4), low_mask);
  __m256i cnt =
      _mm256_add_epi8(_mm256_shuffle_epi8(lut, lo), _mm256_shuffle_epi8(lut, hi));
  return _mm256_sad_epu8(cnt, _mm256_setzero_si256());
}

__attribute__((target("avx2"))) static std::size_t count_ones_avx2(
    const std::uint64_t* w, std::size_t nwords) {
  __m256i acc = _mm256_setzero_si256();
  std::size_t i = 0;
  for (; i + 4 <= nwords; i += 4) {
    __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(w + i));
    acc = _mm256_add_epi64(acc, popcount256(v));
  }
  std::uint64_t lanes[4];
  _mm256_storeu_si256(reinterpret_cast<__m256i*>(lanes), acc);
  std::size_t total = lanes[0] + lanes[1] + lanes[2] + lanes[3];
  for (; i < nwords; ++i) total += __builtin_popcountll(w[i]);
  return total;
}

__attribute__((target("avx2"))) static std::size_t count_and_avx2(
    const std::uint64_t* a, const std::uint64_t* b, std::size_t nwords) {
  __m256i acc = _mm256_setzero_si256();
  std::size_t i = 0;
  for (; i + 4 <= nwords; i += 4) {
    __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
    acc = _mm256_add_epi64(acc, popcount256(_mm256_and_si256(va, vb)));
  }
  std::uint64_t lanes[4];
  _mm256_storeu_si256(reinterpret_cast<__m256i*>(lanes), acc);
  std::size_t total = lanes[0] + lanes[1] + lanes[2] + lanes[3];
  for (; i < nwords; ++i) total += __builtin_popcountll(a[i] & b[i]);
  return total;
}

__attribute__((target("avx2"))) static std::size_t count_andnot_avx2(
    const std::uint64_t* a, const std::uint64_t* b, std::size_t nwords) {
  __m256i acc = _mm256_setzero_si256();
  std::size_t i = 0;
  for (; i + 4 <= nwords; i += 4) {
    __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
    // vpandn computes ~first & second, so pass b first.
    acc = _mm256_add_epi64(acc, popcount256(_mm256_andnot_si256(vb, va)));
  }
  std::uint64_t lanes[4];
  _mm256_storeu_si256(reinterpret_cast<__m256i*>(lanes), acc);
  std::size_t total = lanes[0] + lanes[1] + lanes[2] + lanes[3];
  for (; i < nwords; ++i) total += __builtin_popcountll(a[i] & ~b[i]);
  return total;
}

static bool have_avx2() { return __builtin_cpu_supports("avx2"); }

#else
static bool have_avx2() { return false; }
#endif

namespace {
using Fn1 = std::size_t (*)(const std::uint64_t*, std::size_t);
using Fn2 = std::size_t (*)(const std::uint64_t*, const std::uint64_t*,
                            std::size_t);

struct Dispatch {
  Fn1 ones = count_ones_scalar;
  Fn2 land = count_and_scalar;
  Fn2 landnot = count_andnot_scalar;
  const char* backend = "scalar";
  Dispatch() {
#ifdef CP_X86_64
    if (have_avx2()) {
      ones = count_ones_avx2;
      land = count_and_avx2;
      landnot = count_andnot_avx2;
      backend = "avx2";
    }
#endif
  }
};

const Dispatch& dispatch() {
  static const Dispatch d;
  return d;
}
}  // namespace

std::size_t count_ones(const std::uint64_t* w, std::size_t nwords) {
  return dispatch().ones(w, nwords);
}
std::size_t count_and(const std::uint64_t* a, const std::uint64_t* b,
                      std::size_t nwords) {
  return dispatch().land(a, b, nwords);
}
std::size_t count_andnot(const std::uint64_t* a, const std::uint64_t* b,
                         std::size_t nwords) {
  return dispatch().landnot(a, b, nwords);
}
const char* active_backend() { return dispatch().backend; }

}  // namespace cyclepart::kernels
