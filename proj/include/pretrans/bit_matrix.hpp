#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "pretrans/world_set.hpp"

namespace pretrans {

/// Square boolean matrix with 64-bit word rows. Row i holds the image R(i).
class BitMatrix {
 public:
  BitMatrix() = default;
  explicit BitMatrix(std::size_t n) : n_(n), stride_(words_for(n)), bits_(n * stride_, 0) {}

  static BitMatrix identity(std::size_t n) {
    BitMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i);
    return m;
  }

  std::size_t size() const { return n_; }
  std::size_t stride() const { return stride_; }

  bool test(std::size_t i, std::size_t j) const {
    return (bits_[i * stride_ + j / kWordBits] >> (j % kWordBits)) & 1U;
  }
  void set(std::size_t i, std::size_t j, bool value = true) {
    auto& w = bits_[i * stride_ + j / kWordBits];
    const auto bit = std::uint64_t{1} << (j % kWordBits);
    w = value ? (w | bit) : (w & ~bit);
  }

  std::span<const std::uint64_t> row_words(std::size_t i) const {
    return {bits_.data() + i * stride_, stride_};
  }
  std::span<std::uint64_t> row_words(std::size_t i) { return {bits_.data() + i * stride_, stride_}; }

  WorldSet row(std::size_t i) const { return WorldSet::from_words(n_, row_words(i)); }
  WorldSet column(std::size_t j) const {
    WorldSet s(n_);
    for (std::size_t i = 0; i < n_; ++i)
      if (test(i, j)) s.set(i);
    return s;
  }

  bool row_intersects(std::size_t i, const WorldSet& s) const {
    const auto r = row_words(i);
    const auto w = s.words();
    for (std::size_t k = 0; k < stride_; ++k)
      if (r[k] & w[k]) return true;
    return false;
  }

  /// Image of a set: the union of the rows of its members.
  WorldSet image(const WorldSet& s) const {
    WorldSet out(n_);
    auto o = out.words();
    s.for_each([&](World w) {
      const auto r = row_words(w);
      for (std::size_t k = 0; k < stride_; ++k) o[k] |= r[k];
    });
    return out;
  }

  BitMatrix transpose() const {
    BitMatrix t(n_);
    for (std::size_t i = 0; i < n_; ++i)
      row(i).for_each([&](World j) { t.set(j, i); });
    return t;
  }

  BitMatrix& operator|=(const BitMatrix& o) {
    for (std::size_t k = 0; k < bits_.size(); ++k) bits_[k] |= o.bits_[k];
    return *this;
  }
  BitMatrix& operator&=(const BitMatrix& o) {
    for (std::size_t k = 0; k < bits_.size(); ++k) bits_[k] &= o.bits_[k];
    return *this;
  }
  friend BitMatrix operator|(BitMatrix a, const BitMatrix& b) { return a |= b; }
  friend BitMatrix operator&(BitMatrix a, const BitMatrix& b) { return a &= b; }

  bool subset_of(const BitMatrix& o) const {
    for (std::size_t k = 0; k < bits_.size(); ++k)
      if (bits_[k] & ~o.bits_[k]) return false;
    return true;
  }

  bool any_diagonal() const {
    for (std::size_t i = 0; i < n_; ++i)
      if (test(i, i)) return true;
    return false;
  }
  bool all_diagonal() const {
    for (std::size_t i = 0; i < n_; ++i)
      if (!test(i, i)) return false;
    return true;
  }

  std::size_t edge_count() const {
    std::size_t c = 0;
    for (auto w : bits_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }

  std::vector<std::pair<World, World>> edges() const {
    std::vector<std::pair<World, World>> out;
    for (std::size_t i = 0; i < n_; ++i) row(i).for_each([&](World j) { out.emplace_back(i, j); });
    return out;
  }

  bool operator==(const BitMatrix& o) const = default;

 private:
  std::size_t n_ = 0;
  std::size_t stride_ = 0;
  std::vector<std::uint64_t> bits_;
};

}  // namespace pretrans
