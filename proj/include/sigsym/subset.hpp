#pragma once

#include <algorithm>
#include <bit>
#include <compare>
#include <cstdint>
#include <vector>

namespace sigsym {

/// Subset of a ground set of at most 32 elements, indexed by canonical
/// (sorted-label) position.
class Subset {
 public:
  constexpr Subset() = default;
  constexpr explicit Subset(std::uint32_t bits) : bits_(bits) {}

  static constexpr Subset full(std::size_t n) {
    return Subset(n >= 32 ? ~std::uint32_t{0} : ((std::uint32_t{1} << n) - 1));
  }
  static constexpr Subset single(std::size_t i) { return Subset(std::uint32_t{1} << i); }
  static Subset of(std::initializer_list<int> members) {
    Subset s;
    for (int m : members) s = s.with(static_cast<std::size_t>(m));
    return s;
  }

  constexpr std::uint32_t bits() const { return bits_; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr std::size_t size() const { return static_cast<std::size_t>(std::popcount(bits_)); }
  constexpr bool contains(std::size_t i) const { return (bits_ >> i) & 1u; }
  constexpr bool is_subset_of(Subset other) const { return (bits_ & ~other.bits_) == 0; }
  constexpr Subset with(std::size_t i) const { return Subset(bits_ | (std::uint32_t{1} << i)); }
  constexpr Subset without(std::size_t i) const { return Subset(bits_ & ~(std::uint32_t{1} << i)); }
  constexpr Subset complement(std::size_t n) const { return Subset(~bits_ & full(n).bits_); }

  std::vector<std::size_t> members() const {
    std::vector<std::size_t> out;
    for (std::uint32_t b = bits_; b != 0; b &= b - 1) out.push_back(static_cast<std::size_t>(std::countr_zero(b)));
    return out;
  }

  friend constexpr Subset operator|(Subset a, Subset b) { return Subset(a.bits_ | b.bits_); }
  friend constexpr Subset operator&(Subset a, Subset b) { return Subset(a.bits_ & b.bits_); }
  friend constexpr Subset operator^(Subset a, Subset b) { return Subset(a.bits_ ^ b.bits_); }
  friend constexpr Subset operator-(Subset a, Subset b) { return Subset(a.bits_ & ~b.bits_); }
  friend constexpr bool operator==(Subset, Subset) = default;

 private:
  std::uint32_t bits_ = 0;
};

/// Canonical order on subsets: by size, then lexicographically on the sorted
/// member indices.
inline bool canonical_less(Subset a, Subset b) {
  if (a.size() != b.size()) return a.size() < b.size();
  auto ma = a.members();
  auto mb = b.members();
  return ma < mb;
}

/// All subsets of {0..n-1} in canonical order.
inline std::vector<Subset> subsets_in_canonical_order(std::size_t n) {
  std::vector<Subset> out;
  out.reserve(std::size_t{1} << n);
  for (std::uint32_t b = 0; b < (std::uint32_t{1} << n); ++b) out.emplace_back(b);
  std::sort(out.begin(), out.end(), canonical_less);
  return out;
}

}  // namespace sigsym
