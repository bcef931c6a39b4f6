#pragma once

#include <cmath>
#include <complex>
#include <cstdint>

#include "etgen/prime_field.hpp"

namespace etgen {

/// Uniform hooks for the coefficient types used with LaurentPoly:
/// Fp offline, double and std::complex<double> online.
template <class Scalar>
struct ScalarTraits;

template <>
struct ScalarTraits<Fp> {
  static bool is_zero(const Fp& a) { return a.is_zero(); }
  /// Integer constant in the same field as `like`.
  static Fp from_int(std::int64_t v, const Fp& like) {
    std::int64_t p = like.modulus();
    std::int64_t r = v % p;
    return {static_cast<std::uint32_t>(r < 0 ? r + p : r), like.modulus()};
  }
};

template <>
struct ScalarTraits<double> {
  static bool is_zero(double a) { return a == 0.0; }
  static double from_int(std::int64_t v, double) { return static_cast<double>(v); }
};

template <>
struct ScalarTraits<std::complex<double>> {
  static bool is_zero(const std::complex<double>& a) { return a == 0.0; }
  static std::complex<double> from_int(std::int64_t v, const std::complex<double>&) {
    return {static_cast<double>(v), 0.0};
  }
};

template <class Scalar>
bool is_zero(const Scalar& a) {
  return ScalarTraits<Scalar>::is_zero(a);
}

template <class Scalar>
Scalar from_int(std::int64_t v, const Scalar& like) {
  return ScalarTraits<Scalar>::from_int(v, like);
}

/// x^e for signed e; negative powers divide.
template <class Scalar>
Scalar int_pow(const Scalar& x, int e) {
  Scalar base = x;
  if (e < 0) {
    base = from_int<Scalar>(1, x) / x;
    e = -e;
  }
  Scalar result = from_int<Scalar>(1, x);
  while (e != 0) {
    if (e & 1) result = result * base;
    base = base * base;
    e >>= 1;
  }
  return result;
}

}  // namespace etgen
