#include "etgen/exact_matrix.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace etgen {

ExactMatrix::ExactMatrix(PrimeField field, Index rows, Index cols)
    : field_(field), data_(Storage::Zero(rows, cols)) {}

ExactMatrix ExactMatrix::from_integers(PrimeField field, Index rows, Index cols,
                                       std::span<const std::int64_t> row_major) {
  if (static_cast<Index>(row_major.size()) != rows * cols) {
    throw std::invalid_argument("from_integers: size mismatch");
  }
  ExactMatrix m(field, rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) m.set(i, j, row_major[static_cast<std::size_t>(i * cols + j)]);
  return m;
}

ExactMatrix ExactMatrix::select_columns(std::span<const Index> columns) const {
  ExactMatrix out(field_, rows(), static_cast<Index>(columns.size()));
  for (Index j = 0; j < static_cast<Index>(columns.size()); ++j) out.data_.col(j) = data_.col(columns[j]);
  return out;
}

ExactMatrix ExactMatrix::select_rows(std::span<const Index> rows) const {
  ExactMatrix out(field_, static_cast<Index>(rows.size()), cols());
  for (Index i = 0; i < static_cast<Index>(rows.size()); ++i) out.data_.row(i) = data_.row(rows[i]);
  return out;
}

ExactMatrix ExactMatrix::transpose() const {
  ExactMatrix out(field_, cols(), rows());
  out.data_ = data_.transpose();
  return out;
}

EliminationWorkspace::EliminationWorkspace(const PrimeField& field, Index rows, Index cols)
    : field_(field),
      p_(field.modulus()),
      rows_(rows),
      cols_(cols),
      data_(static_cast<std::size_t>(rows * cols), 0),
      additions_(static_cast<std::size_t>(rows), 0),
      origin_(static_cast<std::size_t>(rows)) {
  const std::uint64_t q = p_ - 1;
  max_additions_ = (std::numeric_limits<std::uint64_t>::max() - q) / (q * q);
  for (Index i = 0; i < rows; ++i) origin_[static_cast<std::size_t>(i)] = i;
}

EliminationWorkspace::EliminationWorkspace(const ExactMatrix& m)
    : EliminationWorkspace(m.field(), m.rows(), m.cols()) {
  for (Index i = 0; i < rows_; ++i)
    for (Index j = 0; j < cols_; ++j) row(i)[j] = m(i, j);
}

void EliminationWorkspace::reduce_row(Index i, Index from) {
  std::uint64_t* r = row(i);
  for (Index j = from; j < cols_; ++j) r[j] %= p_;
  additions_[static_cast<std::size_t>(i)] = 0;
}

void EliminationWorkspace::add_multiple(Index target, Index pivot, std::uint64_t factor, Index from,
                                        Index to) {
  auto& count = additions_[static_cast<std::size_t>(target)];
  if (count >= max_additions_) reduce_row(target, 0);
  ++count;
  std::uint64_t* t = row(target);
  const std::uint64_t* pv = row(pivot);
  const auto f = static_cast<std::uint32_t>(factor);
  for (Index j = from; j < to; ++j) {
    t[j] += std::uint64_t{f} * static_cast<std::uint32_t>(pv[j]);
  }
}

std::vector<EliminationWorkspace::Index> EliminationWorkspace::eliminate(Index first_row, Index col_begin,
                                                                       Index col_end, bool reduce_above) {
  std::vector<Index> pivots;
  Index r = first_row;
  for (Index c = col_begin; c < col_end && r < rows_; ++c) {
    Index found = -1;
    for (Index i = r; i < rows_; ++i) {
      if (row(i)[c] % p_ != 0) {
        found = i;
        break;
      }
    }
    if (found < 0) continue;
    if (found != r) {
      std::swap_ranges(row(found), row(found) + cols_, row(r));
      std::swap(additions_[static_cast<std::size_t>(found)], additions_[static_cast<std::size_t>(r)]);
      std::swap(origin_[static_cast<std::size_t>(found)], origin_[static_cast<std::size_t>(r)]);
    }

    // Normalize the pivot row to a leading one with fully reduced entries.
    reduce_row(r, 0);
    std::uint64_t* pr = row(r);
    const std::uint64_t scale = field_.inv(static_cast<std::uint32_t>(pr[c]));
    Index last = c;
    for (Index j = c; j < cols_; ++j) {
      if (pr[j] != 0) {
        pr[j] = pr[j] * scale % p_;
        last = j;
      }
    }

    const Index start = reduce_above ? first_row : r + 1;
    for (Index i = start; i < rows_; ++i) {
      if (i == r) continue;
      std::uint64_t* ri = row(i);
      const std::uint64_t v = ri[c] % p_;
      if (v == 0) continue;
      add_multiple(i, r, p_ - v, c + 1, last + 1);
      ri[c] = 0;
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

ExactMatrix EliminationWorkspace::to_matrix() const {
  ExactMatrix m(field_, rows_, cols_);
  for (Index i = 0; i < rows_; ++i)
    for (Index j = 0; j < cols_; ++j) m.data()(i, j) = get(i, j);
  return m;
}

RrefResult rref(const ExactMatrix& m) {
  EliminationWorkspace ws(m);
  auto pivots = ws.eliminate(0, 0, m.cols(), true);
  return {ws.to_matrix(), std::move(pivots)};
}

ExactMatrix::Index rank(const ExactMatrix& m) {
  EliminationWorkspace ws(m);
  return static_cast<ExactMatrix::Index>(ws.eliminate(0, 0, m.cols(), false).size());
}

std::vector<ExactMatrix::Index> dependent_columns(const ExactMatrix& m,
                                                  std::span<const ExactMatrix::Index> block) {
  for (auto c : block) {
    if (c < 0 || c >= m.cols()) throw std::out_of_range("dependent_columns: column out of range");
  }
  EliminationWorkspace ws(m.select_columns(block));
  const auto pivots = ws.eliminate(0, 0, ws.cols(), false);
  std::vector<ExactMatrix::Index> dependent;
  std::size_t next = 0;
  for (ExactMatrix::Index j = 0; j < ws.cols(); ++j) {
    if (next < pivots.size() && pivots[next] == j) {
      ++next;
    } else {
      dependent.push_back(block[static_cast<std::size_t>(j)]);
    }
  }
  return dependent;
}

std::vector<ExactMatrix::Index> independent_rows(const ExactMatrix& m) {
  EliminationWorkspace ws(m.transpose());
  return ws.eliminate(0, 0, ws.cols(), false);
}

Fp determinant(const ExactMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant: matrix is not square");
  const PrimeField& f = m.field();
  ExactMatrix::Storage a = m.data();
  const auto n = a.rows();
  std::uint32_t det = 1;
  for (ExactMatrix::Index c = 0; c < n; ++c) {
    ExactMatrix::Index piv = c;
    while (piv < n && a(piv, c) == 0) ++piv;
    if (piv == n) return f.zero();
    if (piv != c) {
      a.row(piv).swap(a.row(c));
      det = f.neg(det);
    }
    det = f.mul(det, a(c, c));
    const std::uint32_t inv = f.inv(a(c, c));
    for (ExactMatrix::Index i = c + 1; i < n; ++i) {
      if (a(i, c) == 0) continue;
      const std::uint32_t factor = f.mul(a(i, c), inv);
      for (ExactMatrix::Index j = c; j < n; ++j) a(i, j) = f.sub(a(i, j), f.mul(factor, a(c, j)));
    }
  }
  return {det, f.modulus()};
}

std::vector<std::vector<std::uint32_t>> nullspace(const ExactMatrix& m) {
  const auto [reduced, pivots] = rref(m);
  const PrimeField& f = m.field();
  std::vector<bool> is_pivot(static_cast<std::size_t>(m.cols()), false);
  for (auto c : pivots) is_pivot[static_cast<std::size_t>(c)] = true;
  std::vector<std::vector<std::uint32_t>> basis;
  for (ExactMatrix::Index free = 0; free < m.cols(); ++free) {
    if (is_pivot[static_cast<std::size_t>(free)]) continue;
    std::vector<std::uint32_t> v(static_cast<std::size_t>(m.cols()), 0);
    v[static_cast<std::size_t>(free)] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) {
      v[static_cast<std::size_t>(pivots[i])] = f.neg(reduced(static_cast<ExactMatrix::Index>(i), free));
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace etgen
