#pragma once
#include <cassert>
#include <cstdint>
#include <vector>

#include "cyclepart/kernels.hpp"

namespace cyclepart {

// Fixed-size bitset sized at construction. Vertex sets throughout the library
// are represented this way; counting queries go through the kernel layer.
class DynBitset {
 public:
  DynBitset() = default;
  explicit DynBitset(int nbits)
      : nbits_(nbits), words_((static_cast<std::size_t>(nbits) + 63) / 64, 0) {}

  int size() const { return nbits_; }
  std::size_t num_words() const { return words_.size(); }
  const std::uint64_t* data() const { return words_.data(); }

  bool test(int i) const {
    assert(i >= 0 && i < nbits_);
    return (words_[i >> 6] >> (i & 63)) & 1u;
  }
  void set(int i) {
    assert(i >= 0 && i < nbits_);
    words_[i >> 6] |= std::uint64_t(1) << (i & 63);
  }
  void reset(int i) {
    assert(i >= 0 && i < nbits_);
    words_[i >> 6] &= ~(std::uint64_t(1) << (i & 63));
  }
  void assign(int i, bool v) {
    if (v)
      set(i);
    else
      reset(i);
  }
  void clear() {
    for (auto& w : words_) w = 0;
  }
  void set_all() {
    for (auto& w : words_) w = ~std::uint64_t(0);
    trim();
  }

  std::size_t count() const {
    return kernels::count_ones(words_.data(), words_.size());
  }
  std::size_t count_and(const DynBitset& o) const {
    assert(nbits_ == o.nbits_);
    return kernels::count_and(words_.data(), o.words_.data(), words_.size());
  }
  // Number of bits set in *this but not in o.
  std::size_t count_andnot(const DynBitset& o) const {
    assert(nbits_ == o.nbits_);
    return kernels::count_andnot(words_.data(), o.words_.data(), words_.size());
  }

  bool any() const {
    for (auto w : words_)
      if (w) return true;
    return false;
  }
  bool none() const { return !any(); }
  bool intersects(const DynBitset& o) const {
    assert(nbits_ == o.nbits_);
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & o.words_[i]) return true;
    return false;
  }

  DynBitset& operator&=(const DynBitset& o) {
    assert(nbits_ == o.nbits_);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
  }
  DynBitset& operator|=(const DynBitset& o) {
    assert(nbits_ == o.nbits_);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }
  // Remove every bit that is set in o.
  DynBitset& subtract(const DynBitset& o) {
    assert(nbits_ == o.nbits_);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
    return *this;
  }
  DynBitset& flip() {
    for (auto& w : words_) w = ~w;
    trim();
    return *this;
  }

  friend DynBitset operator&(DynBitset a, const DynBitset& b) { return a &= b; }
  friend DynBitset operator|(DynBitset a, const DynBitset& b) { return a |= b; }
  friend bool operator==(const DynBitset& a, const DynBitset& b) {
    return a.nbits_ == b.nbits_ && a.words_ == b.words_;
  }

  // First set bit at position >= from, or -1.
  int find_next(int from) const {
    if (from >= nbits_) return -1;
    if (from < 0) from = 0;
    std::size_t wi = static_cast<std::size_t>(from) >> 6;
    std::uint64_t w = words_[wi] >> (from & 63);
    if (w) return from + __builtin_ctzll(w);
    for (++wi; wi < words_.size(); ++wi)
      if (words_[wi]) return static_cast<int>(wi * 64) + __builtin_ctzll(words_[wi]);
    return -1;
  }
  int find_first() const { return find_next(0); }

  std::vector<int> to_vector() const {
    std::vector<int> out;
    out.reserve(count());
    for (int i = find_first(); i >= 0; i = find_next(i + 1)) out.push_back(i);
    return out;
  }

  static DynBitset from_vector(int nbits, const std::vector<int>& idx) {
    DynBitset b(nbits);
    for (int i : idx) b.set(i);
    return b;
  }

 private:
  void trim() {
    int rem = nbits_ & 63;
    if (rem && !words_.empty())
      words_.back() &= (std::uint64_t(1) << rem) - 1;
  }
  int nbits_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace cyclepart
