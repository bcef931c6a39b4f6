#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "etgen/exact_matrix.hpp"
#include "etgen/monomial.hpp"
#include "etgen/prime_field.hpp"

namespace etgen {

/// One shift set per input polynomial: A = (A_1, ..., A_s).
using ShiftTuple = std::vector<MonomialSet>;

/// The trivial tuple ({1}, ..., {1}).
ShiftTuple unit_shifts(std::size_t polys, std::size_t arity);
std::size_t shift_count(const ShiftTuple& shifts);

/// Excessive / reducible / basis split of the template columns.
struct Partition {
  MonomialSet excessive;
  MonomialSet reducible;
  MonomialSet basis;

  friend bool operator==(const Partition&, const Partition&) = default;
};

/// Row provenance: the row is shift * f_poly.
struct RowSource {
  std::size_t poly = 0;
  Monomial shift;

  friend bool operator==(const RowSource&, const RowSource&) = default;
};

/// Positions into the basis vector with basis[q] = x_i * basis[r].
struct C2Pair {
  std::size_t q = 0;
  std::size_t r = 0;

  friend bool operator==(const C2Pair&, const C2Pair&) = default;
};

/// An elimination template together with everything the online phase needs.
///
/// Columns are ordered excessive | reducible | basis, each block
/// grevlex-descending. `reduced_block` holds, for every reducible monomial
/// (in order), the basis part of its row in the reduced row echelon form of
/// the generation-time Macaulay matrix, so r + sum_j block(r, j) b_j = 0
/// over GF(p).
struct Template {
  std::uint32_t prime = PrimeField::kDefaultPrime;
  std::vector<std::string> variables;
  /// Support of each input polynomial at generation time.
  std::vector<MonomialSet> structure;
  Monomial action;
  ShiftTuple shifts;
  Partition partition;
  std::vector<RowSource> rows;
  /// One pair per variable.
  std::vector<C2Pair> c2_pairs;
  ExactMatrix reduced_block;

  std::size_t arity() const { return action.arity(); }
  std::size_t solving_size() const { return partition.basis.size(); }
  std::size_t row_count() const { return rows.size(); }
  std::size_t column_count() const {
    return partition.excessive.size() + partition.reducible.size() + partition.basis.size();
  }
  /// Columns in template order.
  std::vector<Monomial> columns() const;

  friend bool operator==(const Template&, const Template&) = default;
};

std::vector<std::string> default_variable_names(std::size_t arity);

}  // namespace etgen
