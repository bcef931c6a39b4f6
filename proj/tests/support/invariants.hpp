#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "etgen/exact_matrix.hpp"
#include "etgen/template_engine.hpp"

namespace etgen::testing {

/// Tally of one randomized property run.
struct PropertyOutcome {
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::string first_failure;

  bool ok() const { return cases > 0 && failures == 0; }
  void fail(const std::string& what) {
    if (failures++ == 0) first_failure = what;
  }
};

Monomial random_monomial(std::mt19937_64& rng, std::size_t arity, int bound = 3);

/// Antisymmetry, transitivity, totality, degree compatibility and
/// translation invariance of grevlex on random triples.
PropertyOutcome grevlex_order_property(std::size_t cases, std::uint64_t seed);

/// Every vector in the row space of `m`, by enumerating all coefficient
/// combinations. Only for tiny matrices over tiny fields.
std::vector<std::vector<std::uint32_t>> brute_force_row_space(const ExactMatrix& m);

/// rref over GF(7) on matrices up to 4 x 6: echelon shape, idempotence and
/// row-space preservation checked against brute-force enumeration.
PropertyOutcome rref_property(std::size_t cases, std::uint64_t seed);

/// A small random planted system with shifts and an action to test.
struct RandomTestCase {
  LaurentSystem<Fp> system;
  ShiftTuple shifts;
  Monomial action;
};
RandomTestCase random_test_case(std::mt19937_64& rng);

/// E, R, B are pairwise disjoint and cover the support in every pass, the
/// basis shrinks strictly between passes, and successful results have the
/// block shape.
PropertyOutcome partition_property(std::size_t cases, std::uint64_t seed);

/// serialize(deserialize(serialize(t))) is byte-identical and the parsed
/// template equals the original.
PropertyOutcome serialization_property(std::size_t cases, std::uint64_t seed);

}  // namespace etgen::testing
