#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "etgen/prime_field.hpp"

namespace etgen {

/// Dense row-major matrix over GF(p). Entries are always reduced.
class ExactMatrix {
 public:
  using Index = Eigen::Index;
  using Storage = Eigen::Matrix<std::uint32_t, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

  explicit ExactMatrix(PrimeField field = PrimeField{}, Index rows = 0, Index cols = 0);
  /// Builds from signed integers, reducing each entry.
  static ExactMatrix from_integers(PrimeField field, Index rows, Index cols,
                                   std::span<const std::int64_t> row_major);

  Index rows() const { return data_.rows(); }
  Index cols() const { return data_.cols(); }
  const PrimeField& field() const { return field_; }

  std::uint32_t operator()(Index i, Index j) const { return data_(i, j); }
  Fp at(Index i, Index j) const { return {data_(i, j), field_.modulus()}; }
  void set(Index i, Index j, Fp value) { data_(i, j) = value.value(); }
  void set(Index i, Index j, std::int64_t value) { data_(i, j) = field_.reduce(value); }

  const Storage& data() const { return data_; }
  Storage& data() { return data_; }

  ExactMatrix select_columns(std::span<const Index> columns) const;
  ExactMatrix select_rows(std::span<const Index> rows) const;
  ExactMatrix transpose() const;

  friend bool operator==(const ExactMatrix& a, const ExactMatrix& b) {
    return a.field_ == b.field_ && a.data_.rows() == b.data_.rows() &&
           a.data_.cols() == b.data_.cols() && a.data_ == b.data_;
  }

 private:
  PrimeField field_;
  Storage data_;
};

struct RrefResult {
  ExactMatrix reduced;
  /// Pivot column of each nonzero row, strictly increasing.
  std::vector<ExactMatrix::Index> pivots;
};

/// Reduced row echelon form. The pivot in each column is the first row
/// (top-down) holding a nonzero entry, so the result is deterministic.
RrefResult rref(const ExactMatrix& m);

ExactMatrix::Index rank(const ExactMatrix& m);

/// Greedy left-to-right scan over `block` (in the given order): a column is
/// kept iff it increases the running rank. Returns the columns that were not
/// kept; deleting them preserves the rank of the block.
std::vector<ExactMatrix::Index> dependent_columns(const ExactMatrix& m,
                                                  std::span<const ExactMatrix::Index> block);

/// Greedy top-down selection of a maximal linearly independent row subset.
std::vector<ExactMatrix::Index> independent_rows(const ExactMatrix& m);

/// Determinant of a square matrix by elimination mod p.
Fp determinant(const ExactMatrix& m);

/// Basis of {v : m v = 0}, one vector per free column.
std::vector<std::vector<std::uint32_t>> nullspace(const ExactMatrix& m);

/// Gauss-Jordan workspace with deferred modular reduction.
///
/// Entries live in 64-bit accumulators; a row update adds f * pivot_row with
/// f, pivot entries < p, and rows are reduced only when the accumulated sum
/// could overflow. This keeps the inner loop a plain multiply-add.
class EliminationWorkspace {
 public:
  using Index = ExactMatrix::Index;

  EliminationWorkspace(const PrimeField& field, Index rows, Index cols);
  explicit EliminationWorkspace(const ExactMatrix& m);

  Index rows() const { return rows_; }
  Index cols() const { return cols_; }
  std::uint64_t* row(Index i) { return data_.data() + i * cols_; }
  void set(Index i, Index j, std::uint32_t value) { row(i)[j] = value; }
  std::uint32_t get(Index i, Index j) const {
    return static_cast<std::uint32_t>(data_[static_cast<std::size_t>(i * cols_ + j)] % p_);
  }

  /// Eliminates columns [col_begin, col_end) using rows [first_row, rows()).
  /// Pivot rows are moved to first_row, first_row + 1, ... in order. With
  /// `reduce_above` the pivot columns are also cleared in the earlier active
  /// rows [first_row, pivot row); rows before first_row are never touched.
  /// Returns the pivot columns found.
  std::vector<Index> eliminate(Index first_row, Index col_begin, Index col_end, bool reduce_above);

  /// Final reduction of all entries into a matrix.
  ExactMatrix to_matrix() const;
  /// Row index permutation: original row stored at each position.
  const std::vector<Index>& row_origin() const { return origin_; }

 private:
  void reduce_row(Index i, Index from);
  void add_multiple(Index target, Index pivot, std::uint64_t factor, Index from, Index to);

  PrimeField field_;
  std::uint64_t p_;
  Index rows_;
  Index cols_;
  std::uint64_t max_additions_;
  std::vector<std::uint64_t> data_;
  std::vector<std::uint64_t> additions_;
  std::vector<Index> origin_;
};

}  // namespace etgen
