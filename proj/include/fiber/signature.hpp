#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace fiber {

/// Subset bitmask over the generators: bit i set means e_{i+1} is a factor.
/// Basis element e_S is the ordered product of its generators, e_0 = 1.
using BasisIndex = std::uint32_t;

/// Builds a basis index from 1-based generator numbers, e.g. basis({1, 2}) = e12.
constexpr BasisIndex basis(std::initializer_list<int> generators) {
  BasisIndex s = 0;
  for (int g : generators) s |= BasisIndex{1} << (g - 1);
  return s;
}

class AlgebraError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Squares (+1 or -1) of n commuting generators. The algebra has dimension 2^n.
class Signature {
 public:
  static constexpr int kMaxGenerators = 8;

  Signature(std::initializer_list<int> squares);
  explicit Signature(std::span<const int> squares);

  /// Parses "+-" style literals. Accepts ASCII '-' and U+2212 for -1.
  static Signature parse(std::string_view text);

  int generators() const noexcept { return n_; }
  std::size_t dimension() const noexcept { return std::size_t{1} << n_; }
  int square(int generator) const;  // 0-based
  BasisIndex negative_mask() const noexcept { return negative_; }
  bool contains(BasisIndex s) const noexcept { return s < dimension(); }

  std::string str() const;
  std::string label(BasisIndex s) const;
  std::vector<std::string> labels() const;

  friend bool operator==(const Signature&, const Signature&) = default;

 private:
  Signature(int n, BasisIndex negative) : n_(n), negative_(negative) {}

  int n_ = 1;
  BasisIndex negative_ = 0;
};

/// e_S e_T = basis_sign(S, T) e_{S xor T}: product of squares over S & T.
inline int basis_sign(BasisIndex s, BasisIndex t, const Signature& sig) noexcept {
  return (std::popcount(s & t & sig.negative_mask()) & 1) ? -1 : 1;
}

void require_same(const Signature& a, const Signature& b);

namespace signatures {
inline const Signature C2{+1};
inline const Signature C4{-1};
inline const Signature D2{+1, +1};
/// C2 (x) C4 with generator order e1 (square -1), e2 (square +1).
inline const Signature C2xC4{-1, +1};
}  // namespace signatures

}  // namespace fiber
