#include <doctest.h>

#include <random>

#include "etgen/instance_oracle.hpp"
#include "etgen/planted_suite.hpp"
#include "support/toy_fixture.hpp"

using namespace etgen;
using namespace etgen::testing;

TEST_CASE("planted systems vanish at their roots") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto planted = plant_roots(2 + seed % 2, 2 + seed % 5, 4 + seed % 5 + 2 + seed % 2, 3 + seed % 2, seed);
    CHECK(planted.support.size() == 4 + seed % 5 + 2 + seed % 2);
    for (const auto& f : planted.system) {
      CHECK_FALSE(f.is_constant());
      CHECK(is_subset(f.support(), planted.support));
      for (const auto& p : planted.roots) CHECK(evaluate(f, std::span<const Fp>(p)).is_zero());
    }
  }
  CHECK_THROWS_AS(plant_roots(2, 5, 6, 3, 0), std::invalid_argument);
  CHECK_THROWS_AS(plant_roots(3, 2, 6, 2, 0), std::invalid_argument);
}

TEST_CASE("planting is deterministic in the seed") {
  const auto a = plant_roots(2, 3, 6, 3, 42);
  const auto b = plant_roots(2, 3, 6, 3, 42);
  const auto c = plant_roots(2, 3, 6, 3, 43);
  CHECK(a.system == b.system);
  CHECK(a.roots == b.roots);
  CHECK_FALSE(a.system == c.system);
}

TEST_CASE("toy action matrix over GF(p)") {
  const Toy toy = make_toy();
  const auto t = template_test(toy.shifted, unit_shifts(3, 2), toy.action);
  REQUIRE(t);
  CHECK(action_matrix_mod_p(*t) == rational_matrix(toy.field, {{{-3, 2}, {3, 2}, {1, 1}, {0, 1}},
                                                               {{1, 1}, {0, 1}, {0, 1}, {0, 1}},
                                                               {{0, 1}, {1, 1}, {0, 1}, {0, 1}},
                                                               {{7, 9}, {4, 9}, {-2, 9}, {0, 1}}}));
  const auto& f = toy.field;
  const std::vector<FpPoint> roots{{f.element(1), f.element(1)}, {f.element(-1), f.element(2)},
                                   {f.element(2), f.element(-1)}};
  CHECK(verify_vanishing(toy.shifted, *t, roots));
  CHECK(verify_action_spectrum(*t, roots));
  const std::vector<FpPoint> wrong{{f.element(3), f.element(5)}};
  CHECK_FALSE(verify_vanishing(toy.shifted, *t, wrong));
  CHECK_FALSE(verify_action_spectrum(*t, wrong));
}

TEST_CASE("real planted systems vanish at real roots") {
  std::mt19937_64 rng(8);
  const std::vector<MonomialSet> structure{MonomialSet{{1, 0}, {0, 1}, {0, 0}, {1, 1}, {-1, 1}},
                                           MonomialSet{{2, 0}, {0, 1}, {0, 0}, {-1, 0}}};
  std::vector<Eigen::VectorXd> roots{Eigen::Vector2d(0.5, 2.0), Eigen::Vector2d(-1.5, 0.25)};
  const auto system = planted_real_system(structure, roots, rng);
  REQUIRE(system.size() == 2);
  for (std::size_t j = 0; j < 2; ++j) {
    CHECK(system[j].support() == structure[j]);
    for (const auto& r : roots)
      CHECK(std::abs(evaluate(system[j], std::span<const double>(r.data(), 2))) < 1e-12);
  }
}

TEST_CASE("planted suite parameters and a few cases") {
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    const auto p = planted_parameters(seed);
    CHECK((p.arity == 2 || p.arity == 3));
    CHECK(p.roots >= 3);
    CHECK(p.roots <= 8);
    CHECK(p.polys == p.arity + 1);
    CHECK(p.support_size == p.roots + p.polys);
  }
  for (std::uint64_t seed : {0u, 1u, 2u, 3u}) {
    const auto report = run_planted_case(seed);
    CAPTURE(seed);
    CHECK(report.passed());
    CHECK(report.rows_reduced <= report.rows_found);
    CHECK(report.basis >= report.params.roots);
  }
}
