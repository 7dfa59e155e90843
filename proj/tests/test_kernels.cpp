#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdint>
#include <vector>

#include "cyclepart/bitset.hpp"
#include "cyclepart/kernels.hpp"
#include "cyclepart/rng.hpp"

using namespace cyclepart;

namespace {

std::vector<std::uint64_t> random_words(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::uint64_t> w(n);
  for (auto& x : w) x = rng.next_u64();
  return w;
}

std::size_t popcount_ref(const std::vector<std::uint64_t>& w) {
  std::size_t s = 0;
  for (auto x : w) s += __builtin_popcountll(x);
  return s;
}

}  // namespace

TEST_CASE("active backend reports a known name") {
  std::string name = kernels::active_backend();
  CHECK((name == "avx2" || name == "scalar"));
}

TEST_CASE("scalar and dispatched kernels agree on random buffers") {
  // Sizes cross the vector width boundaries: empty, sub-width, odd tails.
  for (std::size_t n : {0, 1, 2, 3, 4, 5, 7, 8, 15, 16, 33, 100, 1024}) {
    auto a = random_words(n, 11 + n);
    auto b = random_words(n, 999 + n);
    CHECK(kernels::count_ones(a.data(), n) ==
          kernels::count_ones_scalar(a.data(), n));
    CHECK(kernels::count_and(a.data(), b.data(), n) ==
          kernels::count_and_scalar(a.data(), b.data(), n));
    CHECK(kernels::count_andnot(a.data(), b.data(), n) ==
          kernels::count_andnot_scalar(a.data(), b.data(), n));
  }
}

TEST_CASE("scalar kernels match a reference popcount") {
  auto a = random_words(57, 5);
  auto b = random_words(57, 6);
  CHECK(kernels::count_ones_scalar(a.data(), a.size()) == popcount_ref(a));
  std::size_t expect_and = 0, expect_andnot = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    expect_and += __builtin_popcountll(a[i] & b[i]);
    expect_andnot += __builtin_popcountll(a[i] & ~b[i]);
  }
  CHECK(kernels::count_and_scalar(a.data(), b.data(), a.size()) == expect_and);
  CHECK(kernels::count_andnot_scalar(a.data(), b.data(), a.size()) ==
        expect_andnot);
}

TEST_CASE("bitset basics") {
  DynBitset b(130);
  CHECK(b.size() == 130);
  CHECK(b.none());
  b.set(0);
  b.set(64);
  b.set(129);
  CHECK(b.count() == 3);
  CHECK(b.test(64));
  CHECK_FALSE(b.test(63));
  b.reset(64);
  CHECK(b.count() == 2);
  b.assign(64, true);
  b.assign(0, false);
  CHECK(b.to_vector() == std::vector<int>{64, 129});
}

TEST_CASE("find_next includes its starting position") {
  DynBitset b(200);
  b.set(5);
  b.set(70);
  CHECK(b.find_first() == 5);
  CHECK(b.find_next(5) == 5);
  CHECK(b.find_next(6) == 70);
  CHECK(b.find_next(70) == 70);
  CHECK(b.find_next(71) == -1);
  CHECK(b.find_next(1000) == -1);
}

TEST_CASE("set_all keeps the tail clean on non-word sizes") {
  DynBitset b(70);
  b.set_all();
  CHECK(b.count() == 70);
  b.flip();
  CHECK(b.none());
}

TEST_CASE("set operations") {
  DynBitset a = DynBitset::from_vector(100, {1, 2, 3, 50, 99});
  DynBitset b = DynBitset::from_vector(100, {2, 3, 4, 99});
  CHECK(a.count_and(b) == 3);
  CHECK(a.count_andnot(b) == 2);
  CHECK(a.intersects(b));
  DynBitset u = a | b;
  CHECK(u.count() == 6);
  DynBitset i = a & b;
  CHECK(i.to_vector() == std::vector<int>{2, 3, 99});
  DynBitset d = a;
  d.subtract(b);
  CHECK(d.to_vector() == std::vector<int>{1, 50});
  CHECK_FALSE(d.intersects(b));
}

TEST_CASE("counts through the bitset layer agree with to_vector sizes") {
  Rng rng(77);
  for (int trial = 0; trial < 20; ++trial) {
    int n = rng.uniform_int(1, 500);
    DynBitset a(n), b(n);
    for (int i = 0; i < n; ++i) {
      if (rng.bernoulli(0.3)) a.set(i);
      if (rng.bernoulli(0.6)) b.set(i);
    }
    std::size_t expect = 0;
    for (int i = 0; i < n; ++i)
      if (a.test(i) && b.test(i)) ++expect;
    CHECK(a.count_and(b) == expect);
    CHECK(a.count() == a.to_vector().size());
  }
}
