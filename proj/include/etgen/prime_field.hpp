#pragma once

#include <cassert>
#include <cstdint>
#include <ostream>

namespace etgen {

class Fp;

/// The prime field GF(p) for a prime p < 2^31.
class PrimeField {
 public:
  static constexpr std::uint32_t kDefaultPrime = 65521;

  /// Throws std::invalid_argument unless `p` is a prime in [3, 2^31).
  explicit PrimeField(std::uint32_t p = kDefaultPrime);

  std::uint32_t modulus() const { return p_; }

  Fp zero() const;
  Fp one() const;
  Fp element(std::int64_t value) const;
  /// num / den reduced mod p; throws std::domain_error if p divides den.
  Fp rational(std::int64_t num, std::int64_t den) const;
  /// Exact image of the dyadic rational that `value` represents.
  Fp from_double(double value) const;

  std::uint32_t reduce(std::int64_t value) const;
  std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
    std::uint32_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const { return a >= b ? a - b : a + p_ - b; }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    return static_cast<std::uint32_t>(std::uint64_t{a} * b % p_);
  }
  std::uint32_t neg(std::uint32_t a) const { return a == 0 ? 0 : p_ - a; }
  /// Throws std::domain_error on zero.
  std::uint32_t inv(std::uint32_t a) const;
  std::uint32_t pow(std::uint32_t a, std::uint64_t e) const;

  friend bool operator==(const PrimeField&, const PrimeField&) = default;

 private:
  std::uint32_t p_;
};

bool is_prime(std::uint32_t n);
/// Inverse of `a` modulo the prime `p`; throws std::domain_error on zero.
std::uint32_t inverse_mod(std::uint32_t a, std::uint32_t p);

/// Element of GF(p) carrying its modulus, so that generic scalar code
/// (polynomial evaluation, problem builders) can run over the field.
class Fp {
 public:
  Fp() = default;
  Fp(std::uint32_t value, std::uint32_t modulus) : v_(value), p_(modulus) {}

  std::uint32_t value() const { return v_; }
  std::uint32_t modulus() const { return p_; }
  PrimeField field() const { return PrimeField(p_); }
  bool is_zero() const { return v_ == 0; }

  Fp inverse() const;

  friend Fp operator+(Fp a, Fp b) {
    assert(a.p_ == b.p_);
    std::uint32_t s = a.v_ + b.v_;
    return {s >= a.p_ ? s - a.p_ : s, a.p_};
  }
  friend Fp operator-(Fp a, Fp b) {
    assert(a.p_ == b.p_);
    return {a.v_ >= b.v_ ? a.v_ - b.v_ : a.v_ + a.p_ - b.v_, a.p_};
  }
  friend Fp operator*(Fp a, Fp b) {
    assert(a.p_ == b.p_);
    return {static_cast<std::uint32_t>(std::uint64_t{a.v_} * b.v_ % a.p_), a.p_};
  }
  friend Fp operator/(Fp a, Fp b) { return a * b.inverse(); }
  Fp operator-() const { return {v_ == 0 ? 0 : p_ - v_, p_}; }
  Fp& operator+=(Fp b) { return *this = *this + b; }
  Fp& operator-=(Fp b) { return *this = *this - b; }
  Fp& operator*=(Fp b) { return *this = *this * b; }
  Fp& operator/=(Fp b) { return *this = *this / b; }

  friend bool operator==(const Fp&, const Fp&) = default;
  friend std::ostream& operator<<(std::ostream& os, const Fp& a) { return os << a.v_; }

 private:
  std::uint32_t v_ = 0;
  std::uint32_t p_ = 0;
};

}  // namespace etgen
