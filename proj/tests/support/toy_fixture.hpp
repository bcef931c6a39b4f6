#pragma once

#include "etgen/corpus.hpp"
#include "etgen/exact_matrix.hpp"
#include "etgen/problem.hpp"

namespace etgen::testing {

/// The two-polynomial toy system f1 = 2y^2/x - 7x - 4y + 9,
/// f2 = 2x^2/y - 7y - 4x + 9 with roots (1, 1), (-1, 2), (2, -1).
struct Toy {
  PrimeField field;
  LaurentSystem<Fp> f;
  /// {f2 / x, f2, f1}.
  LaurentSystem<Fp> shifted;
  LaurentSystem<double> real;
  LaurentSystem<double> real_shifted;
  Monomial action{1, -1};
  Monomial inv_x{-1, 0};
};

inline Toy make_toy() {
  Toy t;
  const ProblemDef def = parse_problem(find_corpus_entry("toy")->problem);
  t.f = generic_system(def, t.field);
  t.real = numeric_system(def);
  t.shifted = {shift(t.f[1], t.inv_x), t.f[1], t.f[0]};
  t.real_shifted = {shift(t.real[1], t.inv_x), t.real[1], t.real[0]};
  return t;
}

/// Matrix over GF(p) from rows of (numerator, denominator) pairs.
inline ExactMatrix rational_matrix(const PrimeField& field,
                                   std::initializer_list<std::initializer_list<std::pair<int, int>>> rows) {
  const auto r = static_cast<ExactMatrix::Index>(rows.size());
  const auto c = static_cast<ExactMatrix::Index>(rows.begin()->size());
  ExactMatrix m(field, r, c);
  ExactMatrix::Index i = 0;
  for (const auto& row : rows) {
    ExactMatrix::Index j = 0;
    for (const auto& [num, den] : row) m.set(i, j++, field.rational(num, den));
    ++i;
  }
  return m;
}

inline ExactMatrix integer_matrix(const PrimeField& field, std::initializer_list<std::initializer_list<int>> rows) {
  const auto r = static_cast<ExactMatrix::Index>(rows.size());
  const auto c = static_cast<ExactMatrix::Index>(rows.begin()->size());
  ExactMatrix m(field, r, c);
  ExactMatrix::Index i = 0;
  for (const auto& row : rows) {
    ExactMatrix::Index j = 0;
    for (int v : row) m.set(i, j++, std::int64_t{v});
    ++i;
  }
  return m;
}

inline MonomialSet monomials(std::initializer_list<Monomial> ms) { return MonomialSet(ms); }

}  // namespace etgen::testing
