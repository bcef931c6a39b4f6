#include <doctest.h>

#include <cmath>
#include <random>

#include "etgen/numeric_solver.hpp"
#include "support/toy_fixture.hpp"

using namespace etgen;
using namespace etgen::testing;

namespace {

Template toy_template(const Toy& toy) {
  const auto t = template_test(toy.shifted, unit_shifts(3, 2), toy.action);
  REQUIRE(t);
  return prune_excessive_columns(toy.shifted, *t);
}

Eigen::VectorXcd point(double x, double y) {
  Eigen::VectorXcd p(2);
  p << x, y;
  return p;
}

}  // namespace

TEST_CASE("toy action matrix") {
  const Toy toy = make_toy();
  const Template t = toy_template(toy);
  const auto pencil = reduce_and_assemble(instantiate(t, toy.real_shifted), t);
  Eigen::Matrix4d expected;
  expected << -1.5, 1.5, 1, 0, 1, 0, 0, 0, 0, 1, 0, 0, 7.0 / 9, 4.0 / 9, -2.0 / 9, 0;
  CHECK((pencil.t0 - expected).cwiseAbs().maxCoeff() < 1e-14);
  CHECK(pencil.c2_pairs == t.c2_pairs);
}

TEST_CASE("eigenvector read-out recovers the toy roots") {
  const Toy toy = make_toy();
  const Template t = toy_template(toy);
  const auto roots = eigen_roots(reduce_and_assemble(instantiate(t, toy.real_shifted), t));
  REQUIRE(roots.size() == 4);
  int matched = 0;
  for (const auto& r : roots) {
    if (r.point.size() == 0) continue;
    for (const auto& truth : {point(1, 1), point(-1, 2), point(2, -1)}) {
      if ((r.point - truth).cwiseAbs().maxCoeff() > 1e-12) continue;
      ++matched;
      CHECK(std::abs(r.point(0) / r.point(1) - r.eigenvalue) < 1e-12);
    }
  }
  CHECK(matched == 3);
}

TEST_CASE("solve filters the redundant candidate and reports the aggregate") {
  const Toy toy = make_toy();
  const Template t = toy_template(toy);
  SolveOptions options;
  options.d0 = 3;
  const auto result = solve(t, toy.real_shifted, options);
  CHECK(result.roots.size() == 3);
  CHECK(result.rejected.size() == 1);
  REQUIRE(result.aggregate);
  CHECK(*result.aggregate < -14.0);
  for (std::size_t i = 1; i < result.roots.size(); ++i)
    CHECK(result.roots[i - 1].eigenvalue.real() <= result.roots[i].eigenvalue.real());
  CHECK_FALSE(solve(t, toy.real_shifted).aggregate);
}

TEST_CASE("residual grows with the distance to a root") {
  const Toy toy = make_toy();
  CHECK(residual(toy.real, point(-1, 2)) < 1e-15);
  double previous = 0.0;
  for (double delta : {1e-9, 1e-7, 1e-5, 1e-3}) {
    const double eps = residual(toy.real, point(-1 + delta, 2 - delta));
    CHECK(eps > previous);
    CHECK(eps < 100 * delta);
    CHECK(eps > 0.01 * delta);
    previous = eps;
  }
  CHECK(std::isinf(residual(toy.real, point(0, 2))));
}

TEST_CASE("aggregate over the d0 smallest residuals") {
  const Toy toy = make_toy();
  std::vector<Root> candidates(3);
  candidates[0].point = point(1, 1);
  candidates[1].point = point(1.001, 1);
  candidates[2].point = point(5, 5);
  const auto agg = residual_error(toy.real, candidates, 2);
  REQUIRE(agg);
  const double expected = 0.5 * std::log10(std::pow(candidates[0].residual, 2) + std::pow(candidates[1].residual, 2));
  CHECK(*agg == doctest::Approx(expected));
  CHECK_FALSE(residual_error(toy.real, candidates, 4));
  CHECK_FALSE(residual_error(toy.real, candidates, 0));
}

TEST_CASE("non-real roots are dropped unless requested") {
  const Toy toy = make_toy();
  const Template t = toy_template(toy);
  std::mt19937_64 rng(17);
  std::normal_distribution<double> gauss;
  int seen = 0;
  for (int trial = 0; trial < 200 && seen < 5; ++trial) {
    auto random_like = [&](const LaurentPoly<double>& f) {
      return convert<double>(f, [&](double) { return gauss(rng); });
    };
    LaurentSystem<double> f{random_like(toy.real[0]), random_like(toy.real[1])};
    const LaurentSystem<double> rows{shift(f[1], toy.inv_x), f[1], f[0]};
    SolveOptions real_only, all;
    all.include_complex = true;
    const auto a = solve(t, rows, real_only);
    const auto b = solve(t, rows, all);
    for (const auto& r : a.roots) CHECK(is_real_point(r.point));
    if (b.roots.size() > a.roots.size()) ++seen;
  }
  CHECK(seen > 0);
}

TEST_CASE("online phase errors") {
  const Toy toy = make_toy();
  const Template t = toy_template(toy);
  LaurentSystem<double> wrong = toy.real_shifted;
  wrong[2] = LaurentPoly<double>({{Monomial{1, 0}, 1.0}, {Monomial{0, 0}, 1.0}});
  CHECK_THROWS_AS(solve(t, wrong), StructureMismatch);
  CHECK_THROWS_AS(solve(t, toy.real), StructureMismatch);
  const NumericMatrix zero = NumericMatrix::Zero(static_cast<Eigen::Index>(t.row_count()),
                                                 static_cast<Eigen::Index>(t.column_count()));
  CHECK_THROWS_AS(reduce_and_assemble(zero, t), DegenerateInstance);
}

TEST_CASE("real point classification") {
  Eigen::VectorXcd p(2);
  p << std::complex<double>(1, 1e-9), std::complex<double>(-3, 0);
  CHECK(is_real_point(p));
  p(1) = std::complex<double>(-3, 0.1);
  CHECK_FALSE(is_real_point(p));
}

TEST_CASE("C2 pair enumeration") {
  const MonomialSet basis{{1, 0}, {0, 1}, {-1, 2}, {-1, 1}};
  const auto pairs = all_c2_pairs(basis, 2);
  REQUIRE(pairs.size() == 2);
  CHECK(pairs[0] == std::vector<C2Pair>{{1, 3}});
  CHECK(pairs[1] == std::vector<C2Pair>{{2, 3}});
}
