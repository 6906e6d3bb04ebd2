#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace pretrans {

/// Dense world identifier; worlds of a frame of size n are 0..n-1.
using World = std::size_t;

inline constexpr std::size_t kWordBits = 64;

constexpr std::size_t words_for(std::size_t universe) {
  return (universe + kWordBits - 1) / kWordBits;
}

/// Mask for the valid bits of the last word of a universe.
constexpr std::uint64_t tail_mask(std::size_t universe) {
  const std::size_t rem = universe % kWordBits;
  return rem == 0 ? ~std::uint64_t{0} : ((std::uint64_t{1} << rem) - 1);
}

/// A subset of the worlds {0, ..., universe-1}, stored as 64-bit words.
class WorldSet {
 public:
  WorldSet() = default;
  explicit WorldSet(std::size_t universe)
      : universe_(universe), words_(words_for(universe), 0) {}

  static WorldSet full(std::size_t universe) {
    WorldSet s(universe);
    for (auto& w : s.words_) w = ~std::uint64_t{0};
    s.trim();
    return s;
  }
  static WorldSet single(std::size_t universe, World w) {
    WorldSet s(universe);
    s.set(w);
    return s;
  }
  static WorldSet from_words(std::size_t universe, std::span<const std::uint64_t> words) {
    WorldSet s(universe);
    for (std::size_t i = 0; i < s.words_.size() && i < words.size(); ++i) s.words_[i] = words[i];
    s.trim();
    return s;
  }
  static WorldSet from_vector(std::size_t universe, const std::vector<World>& worlds);

  std::size_t universe() const { return universe_; }

  bool test(World w) const { return (words_[w / kWordBits] >> (w % kWordBits)) & 1U; }
  void set(World w) { words_[w / kWordBits] |= std::uint64_t{1} << (w % kWordBits); }
  void reset(World w) { words_[w / kWordBits] &= ~(std::uint64_t{1} << (w % kWordBits)); }

  bool none() const {
    for (auto w : words_)
      if (w) return false;
    return true;
  }
  bool any() const { return !none(); }
  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }
  std::optional<World> first() const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i]) return i * kWordBits + static_cast<std::size_t>(std::countr_zero(words_[i]));
    return std::nullopt;
  }

  bool intersects(const WorldSet& o) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & o.words_[i]) return true;
    return false;
  }
  bool subset_of(const WorldSet& o) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & ~o.words_[i]) return false;
    return true;
  }

  WorldSet& operator|=(const WorldSet& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }
  WorldSet& operator&=(const WorldSet& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
  }
  WorldSet& operator-=(const WorldSet& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
    return *this;
  }
  friend WorldSet operator|(WorldSet a, const WorldSet& b) { return a |= b; }
  friend WorldSet operator&(WorldSet a, const WorldSet& b) { return a &= b; }
  friend WorldSet operator-(WorldSet a, const WorldSet& b) { return a -= b; }

  WorldSet complement() const {
    WorldSet s(universe_);
    for (std::size_t i = 0; i < words_.size(); ++i) s.words_[i] = ~words_[i];
    s.trim();
    return s;
  }

  template <class Fn>
  void for_each(Fn&& fn) const {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      std::uint64_t w = words_[i];
      while (w) {
        fn(i * kWordBits + static_cast<std::size_t>(std::countr_zero(w)));
        w &= w - 1;
      }
    }
  }
  std::vector<World> to_vector() const {
    std::vector<World> out;
    for_each([&](World w) { out.push_back(w); });
    return out;
  }

  std::span<const std::uint64_t> words() const { return words_; }
  std::span<std::uint64_t> words() { return words_; }

  bool operator==(const WorldSet& o) const = default;

  /// Total order used for deterministic output: by size, then by member list.
  bool ordered_before(const WorldSet& o) const {
    const auto a = count(), b = o.count();
    if (a != b) return a < b;
    return to_vector() < o.to_vector();
  }

  std::size_t hash() const {
    std::size_t h = universe_ * 0x9e3779b97f4a7c15ULL;
    for (auto w : words_) h = (h ^ w) * 0x100000001b3ULL;
    return h;
  }

 private:
  void trim() {
    if (!words_.empty()) words_.back() &= tail_mask(universe_);
  }

  std::size_t universe_ = 0;
  std::vector<std::uint64_t> words_;
};

inline WorldSet WorldSet::from_vector(std::size_t universe, const std::vector<World>& worlds) {
  WorldSet s(universe);
  for (auto w : worlds) s.set(w);
  return s;
}

struct WorldSetHash {
  std::size_t operator()(const WorldSet& s) const { return s.hash(); }
};

}  // namespace pretrans
