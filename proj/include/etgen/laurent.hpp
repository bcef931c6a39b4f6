#pragma once

#include <algorithm>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "etgen/monomial.hpp"
#include "etgen/scalar.hpp"

namespace etgen {

template <class Scalar>
struct Term {
  Monomial monomial;
  Scalar coeff;

  friend bool operator==(const Term&, const Term&) = default;
};

/// A Laurent polynomial: terms sorted grevlex-descending, pairwise
/// distinct monomials, no zero coefficients.
template <class Scalar>
class LaurentPoly {
 public:
  LaurentPoly() = default;

  /// Merges repeated monomials by summation and drops zero coefficients.
  explicit LaurentPoly(std::vector<Term<Scalar>> terms) : terms_(std::move(terms)) {
    std::sort(terms_.begin(), terms_.end(), [](const Term<Scalar>& a, const Term<Scalar>& b) {
      return GrevlexGreater{}(a.monomial, b.monomial);
    });
    std::vector<Term<Scalar>> merged;
    merged.reserve(terms_.size());
    for (auto& t : terms_) {
      if (!merged.empty() && merged.back().monomial == t.monomial) {
        merged.back().coeff = merged.back().coeff + t.coeff;
      } else {
        merged.push_back(std::move(t));
      }
    }
    std::erase_if(merged, [](const Term<Scalar>& t) { return is_zero(t.coeff); });
    terms_ = std::move(merged);
    for (const auto& t : terms_) {
      if (t.monomial.arity() != terms_.front().monomial.arity()) {
        throw std::invalid_argument("polynomial terms have different arities");
      }
    }
  }

  const std::vector<Term<Scalar>>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }
  std::size_t arity() const { return terms_.empty() ? 0 : terms_.front().monomial.arity(); }

  /// True for the zero polynomial and for nonzero constants.
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].monomial.is_unit()); }

  MonomialSet support() const {
    std::vector<Monomial> ms;
    ms.reserve(terms_.size());
    for (const auto& t : terms_) ms.push_back(t.monomial);
    return MonomialSet(std::move(ms));
  }

  std::optional<Scalar> coeff(const Monomial& m) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), m, [](const Term<Scalar>& t, const Monomial& x) {
      return GrevlexGreater{}(t.monomial, x);
    });
    if (it != terms_.end() && it->monomial == m) return it->coeff;
    return std::nullopt;
  }

  friend bool operator==(const LaurentPoly&, const LaurentPoly&) = default;

 private:
  std::vector<Term<Scalar>> terms_;
};

template <class Scalar>
using LaurentSystem = std::vector<LaurentPoly<Scalar>>;

/// m * f. Translating every exponent vector by the same offset keeps the
/// grevlex order of the terms.
template <class Scalar>
LaurentPoly<Scalar> shift(const LaurentPoly<Scalar>& f, const Monomial& m) {
  if (!f.empty() && f.arity() != m.arity()) throw std::invalid_argument("shift: arity mismatch");
  std::vector<Term<Scalar>> terms;
  terms.reserve(f.size());
  for (const auto& t : f.terms()) terms.push_back({t.monomial * m, t.coeff});
  return LaurentPoly<Scalar>(std::move(terms));
}

template <class Scalar>
MonomialSet support(const LaurentSystem<Scalar>& system) {
  std::vector<Monomial> ms;
  for (const auto& f : system)
    for (const auto& t : f.terms()) ms.push_back(t.monomial);
  return MonomialSet(std::move(ms));
}

template <class Point>
Point evaluate(const Monomial& m, std::span<const Point> point) {
  if (point.size() != m.arity()) throw std::invalid_argument("evaluate: point dimension mismatch");
  Point value = from_int<Point>(1, point[0]);
  for (std::size_t i = 0; i < m.arity(); ++i) {
    if (m[i] != 0) value = value * int_pow(point[i], m[i]);
  }
  return value;
}

/// f(point). Point coordinates and coefficients share the scalar type.
template <class Scalar>
Scalar evaluate(const LaurentPoly<Scalar>& f, std::span<const Scalar> point) {
  if (point.empty()) throw std::invalid_argument("evaluate: empty point");
  Scalar sum = from_int<Scalar>(0, point[0]);
  for (const auto& t : f.terms()) sum = sum + t.coeff * evaluate(t.monomial, point);
  return sum;
}

/// Coefficient-wise conversion, e.g. double -> complex.
template <class To, class From, class Convert>
LaurentPoly<To> convert(const LaurentPoly<From>& f, Convert&& fn) {
  std::vector<Term<To>> terms;
  terms.reserve(f.size());
  for (const auto& t : f.terms()) terms.push_back({t.monomial, fn(t.coeff)});
  return LaurentPoly<To>(std::move(terms));
}

}  // namespace etgen
