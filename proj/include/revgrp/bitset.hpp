#pragma once

#include <bit>
#include <cstdint>
#include <cstddef>
#include <vector>

namespace revgrp {

// Fixed-capacity dense bitset over element indices 0..size-1.
// Word-at-a-time set algebra; capacity is fixed at construction.
class DenseBitset {
 public:
  DenseBitset() = default;

  explicit DenseBitset(std::size_t size)
      : size_(size), words_((size + 63) / 64, 0) {}

  static DenseBitset full(std::size_t size) {
    DenseBitset b(size);
    for (auto& w : b.words_) w = ~std::uint64_t{0};
    b.trim();
    return b;
  }

  std::size_t size() const { return size_; }

  bool test(std::size_t i) const {
    return (words_[i >> 6] >> (i & 63)) & 1u;
  }

  void set(std::size_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }

  void reset(std::size_t i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }

  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : words_) c += std::popcount(w);
    return c;
  }

  bool operator==(const DenseBitset& o) const {
    return size_ == o.size_ && words_ == o.words_;
  }

  bool is_subset_of(const DenseBitset& o) const {
    for (std::size_t k = 0; k < words_.size(); ++k)
      if (words_[k] & ~o.words_[k]) return false;
    return true;
  }

  DenseBitset& operator|=(const DenseBitset& o) {
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] |= o.words_[k];
    return *this;
  }

  DenseBitset& operator&=(const DenseBitset& o) {
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] &= o.words_[k];
    return *this;
  }

  // Lowest index in *this that is absent from `o`, or npos if subset.
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
  std::size_t first_not_in(const DenseBitset& o) const {
    for (std::size_t k = 0; k < words_.size(); ++k) {
      std::uint64_t d = words_[k] & ~o.words_[k];
      if (d) return k * 64 + std::countr_zero(d);
    }
    return npos;
  }

  template <typename Fn>
  void for_each(Fn&& fn) const {
    for (std::size_t k = 0; k < words_.size(); ++k) {
      std::uint64_t w = words_[k];
      while (w) {
        fn(k * 64 + std::countr_zero(w));
        w &= w - 1;
      }
    }
  }

  std::vector<std::uint32_t> to_indices() const {
    std::vector<std::uint32_t> out;
    out.reserve(count());
    for_each([&](std::size_t i) { out.push_back(static_cast<std::uint32_t>(i)); });
    return out;
  }

  // Raw word access for merging per-thread partial results.
  std::uint64_t* words() { return words_.data(); }
  const std::uint64_t* words() const { return words_.data(); }
  std::size_t word_count() const { return words_.size(); }

 private:
  void trim() {
    if (size_ % 64 != 0 && !words_.empty())
      words_.back() &= (std::uint64_t{1} << (size_ % 64)) - 1;
  }

  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace revgrp
