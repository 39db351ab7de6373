#pragma once

#include <bit>
#include <cstdint>
#include <vector>

namespace fairdist {

/// Maximum number of parcels a map may hold. Enumeration works on 64-bit
/// parcel masks; the engine targets exhaustively enumerable desk-scale maps.
inline constexpr int kMaxParcels = 64;

/// Set of parcel indices (positions in ParcelMap::parcels()).
class ParcelSet {
 public:
  constexpr ParcelSet() = default;
  constexpr explicit ParcelSet(std::uint64_t bits) : bits_(bits) {}

  static constexpr ParcelSet single(int index) { return ParcelSet(std::uint64_t{1} << index); }
  static constexpr ParcelSet first(int count) {
    return ParcelSet(count >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << count) - 1);
  }
  static ParcelSet of(const std::vector<int>& indices) {
    ParcelSet s;
    for (int i : indices) s.insert(i);
    return s;
  }

  constexpr std::uint64_t bits() const { return bits_; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr int size() const { return std::popcount(bits_); }
  constexpr bool contains(int index) const { return (bits_ >> index) & 1U; }
  /// Lowest index in the set; the set must be nonempty.
  constexpr int min() const { return std::countr_zero(bits_); }

  constexpr void insert(int index) { bits_ |= std::uint64_t{1} << index; }
  constexpr void erase(int index) { bits_ &= ~(std::uint64_t{1} << index); }

  constexpr bool is_subset_of(ParcelSet other) const { return (bits_ & ~other.bits_) == 0; }
  constexpr bool intersects(ParcelSet other) const { return (bits_ & other.bits_) != 0; }

  constexpr ParcelSet operator|(ParcelSet o) const { return ParcelSet(bits_ | o.bits_); }
  constexpr ParcelSet operator&(ParcelSet o) const { return ParcelSet(bits_ & o.bits_); }
  constexpr ParcelSet operator-(ParcelSet o) const { return ParcelSet(bits_ & ~o.bits_); }
  constexpr ParcelSet& operator|=(ParcelSet o) { bits_ |= o.bits_; return *this; }
  constexpr ParcelSet& operator&=(ParcelSet o) { bits_ &= o.bits_; return *this; }
  constexpr ParcelSet& operator-=(ParcelSet o) { bits_ &= ~o.bits_; return *this; }

  constexpr bool operator==(const ParcelSet&) const = default;

  /// Order of equal-size sets by their sorted element lists.
  static constexpr bool lex_less(ParcelSet a, ParcelSet b) {
    std::uint64_t diff = a.bits_ ^ b.bits_;
    if (diff == 0) return false;
    return (a.bits_ & diff & (~diff + 1)) != 0;
  }

  std::vector<int> indices() const {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(size()));
    for (std::uint64_t b = bits_; b != 0; b &= b - 1) out.push_back(std::countr_zero(b));
    return out;
  }

  template <typename Fn>
  constexpr void for_each(Fn&& fn) const {
    for (std::uint64_t b = bits_; b != 0; b &= b - 1) fn(std::countr_zero(b));
  }

 private:
  std::uint64_t bits_ = 0;
};

struct ParcelSetHash {
  std::size_t operator()(ParcelSet s) const noexcept {
    std::uint64_t x = s.bits() + 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return static_cast<std::size_t>(x ^ (x >> 31));
  }
};

}  // namespace fairdist
