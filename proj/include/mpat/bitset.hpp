#pragma once

#include <bit>
#include <cstdint>
#include <cstring>
#include <vector>

namespace mpat {

// Flat bit array with unaligned 64-bit window access. One guard word is kept
// past the end so load64/or64 never read or write out of bounds.
class Bitset {
 public:
  Bitset() = default;
  explicit Bitset(std::uint64_t nbits, bool ones = false)
      : w_((nbits + 63) / 64 + 1, ones ? ~0ull : 0ull), n_(nbits) {
    trim();
  }

  std::uint64_t size() const { return n_; }

  void set(std::uint64_t i) { w_[i >> 6] |= 1ull << (i & 63); }
  void clear(std::uint64_t i) { w_[i >> 6] &= ~(1ull << (i & 63)); }
  bool test(std::uint64_t i) const { return (w_[i >> 6] >> (i & 63)) & 1; }

  void fill(bool ones) {
    std::memset(w_.data(), ones ? 0xff : 0, w_.size() * sizeof(std::uint64_t));
    trim();
  }

  std::uint64_t count() const {
    std::uint64_t c = 0;
    for (std::uint64_t w : w_) c += std::popcount(w);
    return c;
  }

  // 64 bits starting at arbitrary bit offset.
  std::uint64_t load64(std::uint64_t bit) const {
    std::uint64_t i = bit >> 6, r = bit & 63;
    std::uint64_t lo = w_[i];
    if (r == 0) return lo;
    return (lo >> r) | (w_[i + 1] << (64 - r));
  }

  // OR a 64-bit word in at arbitrary bit offset.
  void or64(std::uint64_t bit, std::uint64_t word) {
    std::uint64_t i = bit >> 6, r = bit & 63;
    w_[i] |= word << r;
    if (r) w_[i + 1] |= word >> (64 - r);
  }

  const std::uint64_t* words() const { return w_.data(); }
  std::uint64_t* words() { return w_.data(); }
  std::size_t word_count() const { return w_.size(); }

 private:
  void trim() {
    // Clear bits at and beyond n_, including the guard word.
    if (w_.empty()) return;
    std::uint64_t last = n_ >> 6, r = n_ & 63;
    if (last < w_.size()) {
      if (r) w_[last] &= (1ull << r) - 1;
      else w_[last] = 0;
      for (std::size_t i = last + 1; i < w_.size(); ++i) w_[i] = 0;
    }
  }

  std::vector<std::uint64_t> w_;
  std::uint64_t n_ = 0;
};

}  // namespace mpat
