#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <vector>

namespace etgen {

inline constexpr std::size_t kMaxVariables = 12;
/// Exponent magnitudes must stay strictly below this bound.
inline constexpr int kExponentLimit = 1 << 15;

/// A Laurent monomial x1^a1 * ... * xk^ak with signed exponents.
///
/// Value type with inline storage. All monomials taking part in one
/// computation share the same arity; mixing arities throws
/// std::invalid_argument. Exponent overflow throws std::overflow_error.
class Monomial {
 public:
  using Exponent = std::int16_t;

  Monomial() = default;
  /// The unit monomial 1 in `arity` variables.
  explicit Monomial(std::size_t arity);
  Monomial(std::initializer_list<int> exponents);

  static Monomial from_exponents(std::span<const int> exponents);
  static Monomial variable(std::size_t arity, std::size_t index, int power = 1);

  std::size_t arity() const { return arity_; }
  int operator[](std::size_t i) const { return exps_[i]; }
  int degree() const;
  bool is_unit() const;

  Monomial inverse() const;
  std::vector<int> exponents() const;

  friend Monomial operator*(const Monomial& a, const Monomial& b);
  friend Monomial operator/(const Monomial& a, const Monomial& b);
  friend bool operator==(const Monomial& a, const Monomial& b) {
    return a.arity_ == b.arity_ && a.exps_ == b.exps_;
  }

  std::size_t hash() const;

 private:
  std::array<Exponent, kMaxVariables> exps_{};
  std::uint8_t arity_ = 0;
};

/// Graded reverse lexicographic comparison with x1 > ... > xk.
///
/// Higher total degree is greater; ties are broken by scanning xk, x(k-1),
/// ... and the monomial with the smaller exponent at the first difference
/// is greater.
std::strong_ordering grevlex_cmp(const Monomial& a, const Monomial& b);

/// Strict weak ordering that sorts grevlex-descending.
struct GrevlexGreater {
  bool operator()(const Monomial& a, const Monomial& b) const {
    return grevlex_cmp(a, b) == std::strong_ordering::greater;
  }
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const { return m.hash(); }
};

/// Distinct monomials held in strictly decreasing grevlex order.
class MonomialSet {
 public:
  using const_iterator = std::vector<Monomial>::const_iterator;

  MonomialSet() = default;
  /// Sorts and removes duplicates.
  explicit MonomialSet(std::vector<Monomial> monomials);
  MonomialSet(std::initializer_list<Monomial> monomials);

  std::size_t size() const { return items_.size(); }
  bool empty() const { return items_.empty(); }
  const Monomial& operator[](std::size_t i) const { return items_[i]; }
  const_iterator begin() const { return items_.begin(); }
  const_iterator end() const { return items_.end(); }
  const std::vector<Monomial>& items() const { return items_; }

  bool contains(const Monomial& m) const;
  /// Position of `m`, or size() when absent.
  std::size_t index_of(const Monomial& m) const;

  void insert(const Monomial& m);
  void erase(const Monomial& m);

  friend bool operator==(const MonomialSet&, const MonomialSet&) = default;

 private:
  std::vector<Monomial> items_;
};

MonomialSet set_union(const MonomialSet& a, const MonomialSet& b);
MonomialSet set_difference(const MonomialSet& a, const MonomialSet& b);
MonomialSet set_intersection(const MonomialSet& a, const MonomialSet& b);
bool is_subset(const MonomialSet& a, const MonomialSet& b);

}  // namespace etgen

template <>
struct std::hash<etgen::Monomial> {
  std::size_t operator()(const etgen::Monomial& m) const { return m.hash(); }
};
