#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace codecap {

/// Fixed-length bit vector backed by 64-bit blocks.
/// Invariant: bits past size() are zero, so block-wise popcounts and
/// comparisons never see garbage.
class DynBitset {
 public:
  DynBitset() = default;
  explicit DynBitset(std::size_t n) : size_(n), blocks_((n + 63) / 64, 0) {}

  std::size_t size() const { return size_; }

  bool test(std::size_t i) const {
    return (blocks_[i >> 6] >> (i & 63)) & std::uint64_t(1);
  }
  void set(std::size_t i) { blocks_[i >> 6] |= std::uint64_t(1) << (i & 63); }
  void reset(std::size_t i) { blocks_[i >> 6] &= ~(std::uint64_t(1) << (i & 63)); }
  void set(std::size_t i, bool v) { v ? set(i) : reset(i); }

  std::size_t count() const {
    std::size_t c = 0;
    for (std::uint64_t b : blocks_) c += static_cast<std::size_t>(std::popcount(b));
    return c;
  }
  bool any() const {
    for (std::uint64_t b : blocks_)
      if (b) return true;
    return false;
  }
  bool none() const { return !any(); }

  DynBitset& operator^=(const DynBitset& o) {
    for (std::size_t w = 0; w < blocks_.size(); ++w) blocks_[w] ^= o.blocks_[w];
    return *this;
  }
  DynBitset& operator&=(const DynBitset& o) {
    for (std::size_t w = 0; w < blocks_.size(); ++w) blocks_[w] &= o.blocks_[w];
    return *this;
  }
  DynBitset& operator|=(const DynBitset& o) {
    for (std::size_t w = 0; w < blocks_.size(); ++w) blocks_[w] |= o.blocks_[w];
    return *this;
  }
  /// this &= ~o
  DynBitset& andnot_assign(const DynBitset& o) {
    for (std::size_t w = 0; w < blocks_.size(); ++w) blocks_[w] &= ~o.blocks_[w];
    return *this;
  }

  friend bool operator==(const DynBitset&, const DynBitset&) = default;

  static std::size_t count_and(const DynBitset& a, const DynBitset& b) {
    std::size_t c = 0;
    for (std::size_t w = 0; w < a.blocks_.size(); ++w)
      c += static_cast<std::size_t>(std::popcount(a.blocks_[w] & b.blocks_[w]));
    return c;
  }
  static std::size_t count_andnot(const DynBitset& a, const DynBitset& b) {
    std::size_t c = 0;
    for (std::size_t w = 0; w < a.blocks_.size(); ++w)
      c += static_cast<std::size_t>(std::popcount(a.blocks_[w] & ~b.blocks_[w]));
    return c;
  }
  static bool intersects(const DynBitset& a, const DynBitset& b) {
    for (std::size_t w = 0; w < a.blocks_.size(); ++w)
      if (a.blocks_[w] & b.blocks_[w]) return true;
    return false;
  }

  /// Index of the first set bit, or npos when empty.
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
  std::size_t first_set() const {
    for (std::size_t w = 0; w < blocks_.size(); ++w)
      if (blocks_[w]) return (w << 6) + static_cast<std::size_t>(std::countr_zero(blocks_[w]));
    return npos;
  }

  template <class F>
  void for_each_set(F&& f) const {
    for (std::size_t w = 0; w < blocks_.size(); ++w) {
      std::uint64_t b = blocks_[w];
      while (b) {
        f((w << 6) + static_cast<std::size_t>(std::countr_zero(b)));
        b &= b - 1;
      }
    }
  }

  const std::vector<std::uint64_t>& blocks() const { return blocks_; }

 private:
  std::size_t size_ = 0;
  std::vector<std::uint64_t> blocks_;
};

}  // namespace codecap
