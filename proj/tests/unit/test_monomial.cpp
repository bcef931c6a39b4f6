#include <doctest.h>

#include <random>

#include "etgen/monomial.hpp"
#include "support/invariants.hpp"

using namespace etgen;

TEST_CASE("grevlex orders the toy monomials") {
  // x^2/y > x > y > y^2/x > x/y > 1 > y/x > 1/x
  const std::vector<Monomial> expected{{2, -1}, {1, 0}, {0, 1}, {-1, 2}, {1, -1}, {0, 0}, {-1, 1}, {-1, 0}};
  for (std::size_t i = 0; i + 1 < expected.size(); ++i)
    CHECK(grevlex_cmp(expected[i], expected[i + 1]) == std::strong_ordering::greater);
  std::vector<Monomial> shuffled(expected.rbegin(), expected.rend());
  CHECK(MonomialSet(shuffled).items() == expected);
}

TEST_CASE("grevlex breaks degree ties on the last variable") {
  CHECK(grevlex_cmp(Monomial{1, 1, 0}, Monomial{2, 0, 0}) == std::strong_ordering::less);
  CHECK(grevlex_cmp(Monomial{0, 2, 0}, Monomial{1, 0, 1}) == std::strong_ordering::greater);
  CHECK(grevlex_cmp(Monomial{1, 0, -1}, Monomial{0, 0, 0}) == std::strong_ordering::greater);
  CHECK(grevlex_cmp(Monomial{3, -2}, Monomial{3, -2}) == std::strong_ordering::equal);
}

TEST_CASE("grevlex is a translation-invariant total order (1000 cases)") {
  const auto outcome = testing::grevlex_order_property(1000, 101);
  INFO(outcome.first_failure);
  CHECK(outcome.cases == 1000);
  CHECK(outcome.ok());
}

TEST_CASE("monomial arithmetic") {
  const Monomial a{2, -1, 0}, b{-1, 3, 4};
  CHECK(a * b == Monomial{1, 2, 4});
  CHECK(a / b == Monomial{3, -4, -4});
  CHECK(a * a.inverse() == Monomial(3));
  CHECK((a * b).degree() == a.degree() + b.degree());
  CHECK(Monomial::variable(3, 1, -2) == Monomial{0, -2, 0});
  CHECK(Monomial(2).is_unit());
  CHECK_FALSE(a.is_unit());
  CHECK(a.exponents() == std::vector<int>{2, -1, 0});
}

TEST_CASE("monomial errors") {
  CHECK_THROWS_AS(Monomial({1, 2}) * Monomial({1, 2, 3}), std::invalid_argument);
  const Monomial big = Monomial::variable(1, 0, kExponentLimit - 1);
  CHECK_THROWS_AS(big * big, std::overflow_error);
  CHECK_THROWS_AS(Monomial(kMaxVariables + 1), std::invalid_argument);
}

TEST_CASE("monomial set operations") {
  const MonomialSet a{{1, 0}, {0, 1}, {0, 0}};
  const MonomialSet b{{0, 1}, {-1, 0}};
  CHECK(set_union(a, b) == MonomialSet{{1, 0}, {0, 1}, {0, 0}, {-1, 0}});
  CHECK(set_intersection(a, b) == MonomialSet{{0, 1}});
  CHECK(set_difference(a, b) == MonomialSet{{1, 0}, {0, 0}});
  CHECK(is_subset(set_intersection(a, b), a));
  CHECK_FALSE(is_subset(b, a));
  CHECK(a.index_of(Monomial{0, 0}) == 2);
  CHECK(a.index_of(Monomial{5, 5}) == a.size());

  MonomialSet c = a;
  c.insert(Monomial{0, 1});
  CHECK(c == a);
  c.erase(Monomial{0, 1});
  CHECK_FALSE(c.contains(Monomial{0, 1}));
  CHECK(c.size() == 2);
}

TEST_CASE("monomial set algebra matches a naive model (1000 cases)") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> count(0, 8);
  for (int c = 0; c < 1000; ++c) {
    std::vector<Monomial> xs, ys;
    for (int i = count(rng); i > 0; --i) xs.push_back(testing::random_monomial(rng, 2, 2));
    for (int i = count(rng); i > 0; --i) ys.push_back(testing::random_monomial(rng, 2, 2));
    const MonomialSet a(xs), b(ys);
    for (std::size_t i = 0; i + 1 < a.size(); ++i) REQUIRE(GrevlexGreater{}(a[i], a[i + 1]));
    const auto u = set_union(a, b), n = set_intersection(a, b), d = set_difference(a, b);
    for (const auto& m : xs) REQUIRE(u.contains(m));
    for (const auto& m : ys) REQUIRE(u.contains(m));
    for (const auto& m : u) {
      REQUIRE((a.contains(m) || b.contains(m)));
      REQUIRE(n.contains(m) == (a.contains(m) && b.contains(m)));
      REQUIRE(d.contains(m) == (a.contains(m) && !b.contains(m)));
    }
    REQUIRE(u.size() + n.size() == a.size() + b.size());
  }
}
