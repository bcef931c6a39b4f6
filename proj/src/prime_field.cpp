#include "etgen/prime_field.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace etgen {

bool is_prime(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint32_t d : {2u, 3u, 5u, 7u}) {
    if (n % d == 0) return n == d;
  }
  for (std::uint64_t d = 11; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

PrimeField::PrimeField(std::uint32_t p) : p_(p) {
  if (p < 3 || p >= (1u << 31) || !is_prime(p)) {
    throw std::invalid_argument("modulus " + std::to_string(p) + " is not a prime in [3, 2^31)");
  }
}

Fp PrimeField::zero() const { return {0, p_}; }
Fp PrimeField::one() const { return {1, p_}; }
Fp PrimeField::element(std::int64_t value) const { return {reduce(value), p_}; }

std::uint32_t PrimeField::reduce(std::int64_t value) const {
  std::int64_t r = value % static_cast<std::int64_t>(p_);
  if (r < 0) r += p_;
  return static_cast<std::uint32_t>(r);
}

Fp PrimeField::rational(std::int64_t num, std::int64_t den) const {
  std::uint32_t d = reduce(den);
  if (d == 0) throw std::domain_error("denominator vanishes modulo " + std::to_string(p_));
  return {mul(reduce(num), inv(d)), p_};
}

Fp PrimeField::from_double(double value) const {
  if (!std::isfinite(value)) throw std::domain_error("non-finite coefficient");
  if (value == 0.0) return zero();
  int exponent = 0;
  double mantissa = std::frexp(value, &exponent);  // value = mantissa * 2^exponent
  // 53-bit integer mantissa.
  auto integer = static_cast<std::int64_t>(std::ldexp(mantissa, 53));
  exponent -= 53;
  std::uint32_t v = reduce(integer);
  std::uint32_t two = exponent >= 0 ? 2 : inv(2);
  v = mul(v, pow(two, static_cast<std::uint64_t>(exponent >= 0 ? exponent : -exponent)));
  return {v, p_};
}

std::uint32_t PrimeField::pow(std::uint32_t a, std::uint64_t e) const {
  std::uint32_t result = 1 % p_;
  std::uint32_t base = a % p_;
  while (e != 0) {
    if (e & 1u) result = mul(result, base);
    base = mul(base, base);
    e >>= 1;
  }
  return result;
}

std::uint32_t inverse_mod(std::uint32_t a, std::uint32_t p) {
  a %= p;
  if (a == 0) throw std::domain_error("inverse of zero in GF(" + std::to_string(p) + ")");
  // Extended Euclid on signed 64-bit values.
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = p, new_r = a;
  while (new_r != 0) {
    std::int64_t q = r / new_r;
    t -= q * new_t;
    std::swap(t, new_t);
    r -= q * new_r;
    std::swap(r, new_r);
  }
  if (t < 0) t += p;
  return static_cast<std::uint32_t>(t);
}

std::uint32_t PrimeField::inv(std::uint32_t a) const { return inverse_mod(a, p_); }

Fp Fp::inverse() const { return {inverse_mod(v_, p_), p_}; }

}  // namespace etgen
