#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace rschain {

/// Player set encoded as a bitset over {0, 1, ..., n}; bit 0 is the supplier.
class Coalition {
 public:
  using Bits = std::uint32_t;

  /// Largest supported number of players (supplier included).
  static constexpr int kMaxPlayers = 31;

  constexpr Coalition() = default;
  constexpr explicit Coalition(Bits bits) : bits_(bits) {}

  static Coalition of(std::initializer_list<int> players) {
    Coalition c;
    for (int p : players) c = c.with(p);
    return c;
  }
  static Coalition of(const std::vector<int>& players) {
    Coalition c;
    for (int p : players) c = c.with(p);
    return c;
  }
  static constexpr Coalition supplier() { return Coalition{1u}; }
  /// Retailers {1..n}.
  static constexpr Coalition retailers(int n) { return Coalition{((Bits{1} << n) - 1) << 1}; }
  /// Grand coalition {0..n}.
  static constexpr Coalition grand(int n) { return Coalition{(Bits{1} << (n + 1)) - 1}; }

  constexpr Bits bits() const { return bits_; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr int size() const { return std::popcount(bits_); }
  constexpr bool contains(int player) const { return (bits_ >> player) & 1u; }
  constexpr bool has_supplier() const { return contains(0); }

  constexpr Coalition with(int player) const { return Coalition{bits_ | (Bits{1} << player)}; }
  constexpr Coalition without(int player) const { return Coalition{bits_ & ~(Bits{1} << player)}; }
  /// The retailer part S of S or S0.
  constexpr Coalition retailers_only() const { return without(0); }

  constexpr bool subset_of(Coalition other) const { return (bits_ & ~other.bits_) == 0; }
  constexpr bool disjoint(Coalition other) const { return (bits_ & other.bits_) == 0; }
  constexpr Coalition operator|(Coalition o) const { return Coalition{bits_ | o.bits_}; }
  constexpr Coalition operator&(Coalition o) const { return Coalition{bits_ & o.bits_}; }

  /// Member ids in increasing order.
  std::vector<int> players() const {
    std::vector<int> out;
    for (Bits b = bits_; b != 0; b &= b - 1) out.push_back(std::countr_zero(b));
    return out;
  }

  /// "{0,1,2}" style rendering.
  std::string to_string() const {
    std::string s = "{";
    bool first = true;
    for (int p : players()) {
      if (!first) s += ',';
      s += std::to_string(p);
      first = false;
    }
    return s + "}";
  }

  constexpr auto operator<=>(const Coalition&) const = default;

 private:
  Bits bits_ = 0;
};

/// Every nonempty subset of `universe`, in increasing bit order.
inline std::vector<Coalition> nonempty_subsets(Coalition universe) {
  std::vector<Coalition> out;
  const auto u = universe.bits();
  // Enumerate submasks in increasing order.
  for (Coalition::Bits s = (0 - u) & u; s != 0; s = (s - u) & u) out.emplace_back(s);
  return out;
}

/// Ordering used in reports and JSON: by size, then lexicographic ids.
inline bool display_less(Coalition a, Coalition b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a.players() < b.players();
}

}  // namespace rschain
