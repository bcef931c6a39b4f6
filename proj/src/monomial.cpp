#include "etgen/monomial.hpp"

#include <stdexcept>
#include <string>

namespace etgen {

namespace {

void check_arity(std::size_t arity) {
  if (arity > kMaxVariables) {
    throw std::invalid_argument("monomial arity " + std::to_string(arity) +
                                " exceeds the supported maximum of " +
                                std::to_string(kMaxVariables));
  }
}

void require_same_arity(const Monomial& a, const Monomial& b) {
  if (a.arity() != b.arity()) {
    throw std::invalid_argument("monomial arity mismatch: " + std::to_string(a.arity()) +
                                " vs " + std::to_string(b.arity()));
  }
}

Monomial::Exponent checked_exponent(long value) {
  if (value <= -kExponentLimit || value >= kExponentLimit) {
    throw std::overflow_error("monomial exponent " + std::to_string(value) + " out of range");
  }
  return static_cast<Monomial::Exponent>(value);
}

}  // namespace

Monomial::Monomial(std::size_t arity) {
  check_arity(arity);
  arity_ = static_cast<std::uint8_t>(arity);
}

Monomial::Monomial(std::initializer_list<int> exponents) {
  check_arity(exponents.size());
  arity_ = static_cast<std::uint8_t>(exponents.size());
  std::size_t i = 0;
  for (int e : exponents) exps_[i++] = checked_exponent(e);
}

Monomial Monomial::from_exponents(std::span<const int> exponents) {
  Monomial m(exponents.size());
  for (std::size_t i = 0; i < exponents.size(); ++i) m.exps_[i] = checked_exponent(exponents[i]);
  return m;
}

Monomial Monomial::variable(std::size_t arity, std::size_t index, int power) {
  if (index >= arity) throw std::out_of_range("variable index out of range");
  Monomial m(arity);
  m.exps_[index] = checked_exponent(power);
  return m;
}

int Monomial::degree() const {
  int d = 0;
  for (std::size_t i = 0; i < arity_; ++i) d += exps_[i];
  return d;
}

bool Monomial::is_unit() const {
  for (std::size_t i = 0; i < arity_; ++i)
    if (exps_[i] != 0) return false;
  return true;
}

Monomial Monomial::inverse() const {
  Monomial m(arity_);
  for (std::size_t i = 0; i < arity_; ++i) m.exps_[i] = checked_exponent(-long{exps_[i]});
  return m;
}

std::vector<int> Monomial::exponents() const {
  return std::vector<int>(exps_.begin(), exps_.begin() + arity_);
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  require_same_arity(a, b);
  Monomial m(a.arity_);
  for (std::size_t i = 0; i < a.arity_; ++i)
    m.exps_[i] = checked_exponent(long{a.exps_[i]} + b.exps_[i]);
  return m;
}

Monomial operator/(const Monomial& a, const Monomial& b) {
  require_same_arity(a, b);
  Monomial m(a.arity_);
  for (std::size_t i = 0; i < a.arity_; ++i)
    m.exps_[i] = checked_exponent(long{a.exps_[i]} - b.exps_[i]);
  return m;
}

std::size_t Monomial::hash() const {
  // FNV-1a over the used exponents.
  std::uint64_t h = 1469598103934665603ull ^ arity_;
  for (std::size_t i = 0; i < arity_; ++i) {
    h ^= static_cast<std::uint16_t>(exps_[i]);
    h *= 1099511628211ull;
  }
  return static_cast<std::size_t>(h);
}

std::strong_ordering grevlex_cmp(const Monomial& a, const Monomial& b) {
  require_same_arity(a, b);
  if (auto c = a.degree() <=> b.degree(); c != 0) return c;
  for (std::size_t i = a.arity(); i-- > 0;) {
    if (a[i] != b[i]) return b[i] <=> a[i];
  }
  return std::strong_ordering::equal;
}

MonomialSet::MonomialSet(std::vector<Monomial> monomials) : items_(std::move(monomials)) {
  std::sort(items_.begin(), items_.end(), GrevlexGreater{});
  items_.erase(std::unique(items_.begin(), items_.end()), items_.end());
}

MonomialSet::MonomialSet(std::initializer_list<Monomial> monomials)
    : MonomialSet(std::vector<Monomial>(monomials)) {}

std::size_t MonomialSet::index_of(const Monomial& m) const {
  auto it = std::lower_bound(items_.begin(), items_.end(), m, GrevlexGreater{});
  if (it != items_.end() && *it == m) return static_cast<std::size_t>(it - items_.begin());
  return items_.size();
}

bool MonomialSet::contains(const Monomial& m) const { return index_of(m) != items_.size(); }

void MonomialSet::insert(const Monomial& m) {
  auto it = std::lower_bound(items_.begin(), items_.end(), m, GrevlexGreater{});
  if (it == items_.end() || !(*it == m)) items_.insert(it, m);
}

void MonomialSet::erase(const Monomial& m) {
  auto it = std::lower_bound(items_.begin(), items_.end(), m, GrevlexGreater{});
  if (it != items_.end() && *it == m) items_.erase(it);
}

namespace {

template <class Op>
MonomialSet combine(const MonomialSet& a, const MonomialSet& b, Op op) {
  std::vector<Monomial> out;
  op(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out), GrevlexGreater{});
  return MonomialSet(std::move(out));
}

}  // namespace

MonomialSet set_union(const MonomialSet& a, const MonomialSet& b) {
  return combine(a, b, [](auto... args) { return std::set_union(args...); });
}

MonomialSet set_difference(const MonomialSet& a, const MonomialSet& b) {
  return combine(a, b, [](auto... args) { return std::set_difference(args...); });
}

MonomialSet set_intersection(const MonomialSet& a, const MonomialSet& b) {
  return combine(a, b, [](auto... args) { return std::set_intersection(args...); });
}

bool is_subset(const MonomialSet& a, const MonomialSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end(), GrevlexGreater{});
}

}  // namespace etgen
