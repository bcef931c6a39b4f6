#pragma once

#include <vector>

#include "etgen/laurent.hpp"

// Small polynomial arithmetic used by the problem builders only.
namespace etgen::detail {

template <class Scalar>
LaurentPoly<Scalar> constant(const Scalar& c, std::size_t arity) {
  return LaurentPoly<Scalar>({{Monomial(arity), c}});
}

/// c0 * v0 + ... + c_{n-1} * v_{n-1} + c_n with v_i the monomials given.
template <class Scalar>
LaurentPoly<Scalar> linear(const std::vector<Monomial>& monomials, const std::vector<Scalar>& coeffs) {
  std::vector<Term<Scalar>> terms;
  for (std::size_t i = 0; i < monomials.size(); ++i) terms.push_back({monomials[i], coeffs[i]});
  return LaurentPoly<Scalar>(std::move(terms));
}

template <class Scalar>
LaurentPoly<Scalar> operator+(const LaurentPoly<Scalar>& a, const LaurentPoly<Scalar>& b) {
  std::vector<Term<Scalar>> terms = a.terms();
  terms.insert(terms.end(), b.terms().begin(), b.terms().end());
  return LaurentPoly<Scalar>(std::move(terms));
}

template <class Scalar>
LaurentPoly<Scalar> operator*(const Scalar& c, const LaurentPoly<Scalar>& f) {
  std::vector<Term<Scalar>> terms;
  for (const auto& t : f.terms()) terms.push_back({t.monomial, c * t.coeff});
  return LaurentPoly<Scalar>(std::move(terms));
}

template <class Scalar>
LaurentPoly<Scalar> operator-(const LaurentPoly<Scalar>& a, const LaurentPoly<Scalar>& b) {
  if (b.empty()) return a;
  return a + from_int<Scalar>(-1, b.terms().front().coeff) * b;
}

template <class Scalar>
LaurentPoly<Scalar> operator*(const LaurentPoly<Scalar>& a, const LaurentPoly<Scalar>& b) {
  std::vector<Term<Scalar>> terms;
  terms.reserve(a.size() * b.size());
  for (const auto& s : a.terms())
    for (const auto& t : b.terms()) terms.push_back({s.monomial * t.monomial, s.coeff * t.coeff});
  return LaurentPoly<Scalar>(std::move(terms));
}

/// Partial derivative with respect to variable `var`.
template <class Scalar>
LaurentPoly<Scalar> derivative(const LaurentPoly<Scalar>& f, std::size_t var) {
  std::vector<Term<Scalar>> terms;
  for (const auto& t : f.terms()) {
    const int e = t.monomial[var];
    if (e == 0) continue;
    terms.push_back({t.monomial * Monomial::variable(t.monomial.arity(), var, -1), from_int<Scalar>(e, t.coeff) * t.coeff});
  }
  return LaurentPoly<Scalar>(std::move(terms));
}

}  // namespace etgen::detail
