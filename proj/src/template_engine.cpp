#include "etgen/template_engine.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <unordered_map>

namespace etgen {

using Index = ExactMatrix::Index;

ShiftTuple unit_shifts(std::size_t polys, std::size_t arity) {
  return ShiftTuple(polys, MonomialSet{Monomial(arity)});
}

std::size_t shift_count(const ShiftTuple& shifts) {
  std::size_t n = 0;
  for (const auto& a : shifts) n += a.size();
  return n;
}

std::vector<Monomial> Template::columns() const {
  std::vector<Monomial> cols;
  cols.reserve(column_count());
  for (const auto* block : {&partition.excessive, &partition.reducible, &partition.basis})
    cols.insert(cols.end(), block->begin(), block->end());
  return cols;
}

std::vector<std::string> default_variable_names(std::size_t arity) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < arity; ++i) names.push_back("x" + std::to_string(i + 1));
  return names;
}

namespace {

std::uint32_t system_modulus(const LaurentSystem<Fp>& system) {
  for (const auto& f : system)
    if (!f.empty()) return f.terms().front().coeff.modulus();
  throw std::invalid_argument("system has no coefficients");
}

std::size_t system_arity(const LaurentSystem<Fp>& system) {
  for (const auto& f : system)
    if (!f.empty()) return f.arity();
  throw std::invalid_argument("system has no terms");
}

std::size_t poly_hash(const LaurentPoly<Fp>& f) {
  std::size_t h = f.size();
  for (const auto& t : f.terms()) h = h * 1000003u ^ (t.monomial.hash() + t.coeff.value());
  return h;
}

}  // namespace

std::vector<ShiftedRow> apply_shifts(const LaurentSystem<Fp>& system, const ShiftTuple& shifts) {
  if (shifts.size() != system.size()) {
    throw std::invalid_argument("shift tuple has " + std::to_string(shifts.size()) + " sets for " +
                                std::to_string(system.size()) + " polynomials");
  }
  std::vector<ShiftedRow> rows;
  std::unordered_multimap<std::size_t, std::size_t> seen;
  for (std::size_t j = 0; j < system.size(); ++j) {
    for (const auto& m : shifts[j]) {
      auto poly = shift(system[j], m);
      const std::size_t h = poly_hash(poly);
      auto [lo, hi] = seen.equal_range(h);
      bool duplicate = std::any_of(lo, hi, [&](const auto& kv) { return rows[kv.second].poly == poly; });
      if (duplicate) continue;
      seen.emplace(h, rows.size());
      rows.push_back({{j, m}, std::move(poly)});
    }
  }
  return rows;
}

ExactMatrix build_macaulay(const LaurentSystem<Fp>& rows, std::span<const Monomial> column_order) {
  PrimeField field(system_modulus(rows));
  std::unordered_map<Monomial, Index, MonomialHash> col;
  for (std::size_t j = 0; j < column_order.size(); ++j) col.emplace(column_order[j], static_cast<Index>(j));
  ExactMatrix m(field, static_cast<Index>(rows.size()), static_cast<Index>(column_order.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (const auto& t : rows[i].terms()) {
      auto it = col.find(t.monomial);
      if (it == col.end()) throw std::invalid_argument("build_macaulay: monomial missing from column order");
      m.set(static_cast<Index>(i), it->second, t.coeff);
    }
  }
  return m;
}

ExactMatrix template_matrix(const LaurentSystem<Fp>& system, const Template& tmpl) {
  const auto columns = tmpl.columns();
  std::unordered_map<Monomial, Index, MonomialHash> col;
  for (std::size_t j = 0; j < columns.size(); ++j) col.emplace(columns[j], static_cast<Index>(j));
  ExactMatrix m(PrimeField(tmpl.prime), static_cast<Index>(tmpl.rows.size()), static_cast<Index>(columns.size()));
  for (std::size_t i = 0; i < tmpl.rows.size(); ++i) {
    const auto& src = tmpl.rows[i];
    if (src.poly >= system.size()) throw std::out_of_range("template row refers to a missing polynomial");
    for (const auto& t : system[src.poly].terms()) {
      auto it = col.find(t.monomial * src.shift);
      if (it != col.end()) m.set(static_cast<Index>(i), it->second, t.coeff);
    }
  }
  return m;
}

Partition partition_for_action(const MonomialSet& support, std::span<const Monomial> action_support) {
  if (action_support.empty()) throw std::invalid_argument("empty action support");
  Partition p;
  std::vector<Monomial> basis, reducible;
  for (const auto& m : support) {
    bool permissible = std::all_of(action_support.begin(), action_support.end(),
                                   [&](const Monomial& b) { return support.contains(b * m); });
    if (permissible) basis.push_back(m);
  }
  p.basis = MonomialSet(std::move(basis));
  for (const auto& m : p.basis)
    for (const auto& b : action_support)
      if (!p.basis.contains(b * m)) reducible.push_back(b * m);
  p.reducible = MonomialSet(std::move(reducible));
  p.excessive = set_difference(set_difference(support, p.reducible), p.basis);
  return p;
}

Partition partition_for_action(const MonomialSet& support, const Monomial& action) {
  return partition_for_action(support, std::span<const Monomial>(&action, 1));
}

namespace {

enum class ColumnClass : std::uint8_t { Excessive, Reducible, Basis };

/// Column bookkeeping for one template test run over a fixed support.
class TestState {
 public:
  TestState(const std::vector<ShiftedRow>& rows, const Monomial& action, PrimeField field)
      : field_(field) {
    LaurentSystem<Fp> polys;
    polys.reserve(rows.size());
    for (const auto& r : rows) polys.push_back(r.poly);
    support_ = etgen::support(polys);
    const auto n = support_.size();
    std::unordered_map<Monomial, int, MonomialHash> index;
    index.reserve(n * 2);
    for (std::size_t c = 0; c < n; ++c) index.emplace(support_[c], static_cast<int>(c));
    image_.assign(n, -1);
    for (std::size_t c = 0; c < n; ++c) {
      auto it = index.find(support_[c] * action);
      if (it != index.end()) image_[c] = it->second;
    }
    entries_.resize(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (const auto& t : rows[i].poly.terms())
        entries_[i].push_back({index.at(t.monomial), t.coeff.value()});
    removed_.assign(n, 0);
    cls_.assign(n, ColumnClass::Excessive);
  }

  const MonomialSet& support() const { return support_; }
  /// Columns not yet moved to the excessive set.
  MonomialSet remaining() const {
    std::vector<Monomial> ms;
    for (std::size_t c = 0; c < columns(); ++c)
      if (!removed_[c]) ms.push_back(support_[c]);
    return MonomialSet(std::move(ms));
  }
  std::size_t columns() const { return support_.size(); }
  Index rows() const { return static_cast<Index>(entries_.size()); }

  /// Recomputes B, R, E from the columns still in U. Returns #B.
  std::size_t classify() {
    const auto n = columns();
    std::size_t basis = 0;
    for (std::size_t c = 0; c < n; ++c) {
      const bool in_basis = !removed_[c] && image_[c] >= 0 && !removed_[static_cast<std::size_t>(image_[c])];
      cls_[c] = in_basis ? ColumnClass::Basis : ColumnClass::Excessive;
      basis += in_basis;
    }
    for (std::size_t c = 0; c < n; ++c) {
      if (cls_[c] != ColumnClass::Basis) continue;
      auto img = static_cast<std::size_t>(image_[c]);
      if (cls_[img] != ColumnClass::Basis) cls_[img] = ColumnClass::Reducible;
    }
    // Everything in U outside R and B joins the accumulated excessive set.
    for (std::size_t c = 0; c < n; ++c)
      if (cls_[c] == ColumnClass::Excessive) removed_[c] = 1;
    order_.clear();
    block_sizes_ = {0, 0, 0};
    for (auto k : {ColumnClass::Excessive, ColumnClass::Reducible, ColumnClass::Basis}) {
      for (std::size_t c = 0; c < n; ++c) {
        if (cls_[c] == k) {
          order_.push_back(static_cast<Index>(c));
          ++block_sizes_[static_cast<std::size_t>(k)];
        }
      }
    }
    return basis;
  }

  Index block_size(ColumnClass k) const { return static_cast<Index>(block_sizes_[static_cast<std::size_t>(k)]); }
  const std::vector<Index>& order() const { return order_; }
  ColumnClass column_class(std::size_t c) const { return cls_[c]; }
  void mark_removed(std::size_t c) { removed_[c] = 1; }

  MonomialSet block(ColumnClass k) const {
    std::vector<Monomial> ms;
    for (std::size_t c = 0; c < columns(); ++c)
      if (cls_[c] == k) ms.push_back(support_[c]);
    return MonomialSet(std::move(ms));
  }

  /// Workspace over the first `ncols` columns of the current order.
  EliminationWorkspace workspace(Index ncols) const {
    std::vector<Index> position(columns(), -1);
    for (Index j = 0; j < ncols; ++j) position[static_cast<std::size_t>(order_[static_cast<std::size_t>(j)])] = j;
    EliminationWorkspace ws(field_, rows(), ncols);
    for (Index i = 0; i < rows(); ++i)
      for (const auto& [c, v] : entries_[static_cast<std::size_t>(i)]) {
        const Index j = position[static_cast<std::size_t>(c)];
        if (j >= 0) ws.set(i, j, v);
      }
    return ws;
  }

  ExactMatrix ordered_matrix() const {
    auto ws = workspace(static_cast<Index>(order_.size()));
    return ws.to_matrix();
  }

 private:
  PrimeField field_;
  MonomialSet support_;
  std::vector<int> image_;
  std::vector<std::vector<std::pair<int, std::uint32_t>>> entries_;
  std::vector<char> removed_;
  std::vector<ColumnClass> cls_;
  std::vector<Index> order_;
  std::array<std::size_t, 3> block_sizes_{};
};

/// Grevlex-greatest b with x_i * b in the basis, for every variable.
std::optional<std::vector<C2Pair>> find_c2_pairs(const MonomialSet& basis, std::size_t arity) {
  std::vector<C2Pair> pairs;
  for (std::size_t i = 0; i < arity; ++i) {
    const Monomial xi = Monomial::variable(arity, i);
    bool found = false;
    for (std::size_t r = 0; r < basis.size() && !found; ++r) {
      const std::size_t q = basis.index_of(xi * basis[r]);
      if (q < basis.size()) {
        pairs.push_back({q, r});
        found = true;
      }
    }
    if (!found) return std::nullopt;
  }
  return pairs;
}

}  // namespace

std::optional<Template> template_test(const LaurentSystem<Fp>& system, const ShiftTuple& shifts,
                                      const Monomial& action, TemplateTestTrace* trace) {
  if (system.empty()) throw std::invalid_argument("template_test: empty system");
  if (action.is_unit()) throw std::invalid_argument("template_test: constant action monomial");
  const std::size_t arity = system_arity(system);
  if (action.arity() != arity) throw std::invalid_argument("template_test: action arity mismatch");
  const PrimeField field(system_modulus(system));

  const auto rows = apply_shifts(system, shifts);
  TestState state(rows, action, field);
  if (trace) trace->iterations.clear();

  std::vector<char> previous_basis;
  while (true) {
    MonomialSet remaining = trace ? state.remaining() : MonomialSet{};
    const std::size_t basis_size = state.classify();
    if (trace) {
      TestIteration it;
      it.support = std::move(remaining);
      it.partition = {state.block(ColumnClass::Excessive), state.block(ColumnClass::Reducible),
                      state.block(ColumnClass::Basis)};
      trace->iterations.push_back(std::move(it));
    }
    if (basis_size == 0) {
      if (trace) trace->outcome = TestOutcome::EmptyBasis;
      return std::nullopt;
    }

    // The basis chain must shrink strictly between passes.
    std::vector<char> current(state.columns());
    for (std::size_t c = 0; c < state.columns(); ++c) current[c] = state.column_class(c) == ColumnClass::Basis;
    if (!previous_basis.empty()) {
      bool subset = true, strict = false;
      for (std::size_t c = 0; c < current.size(); ++c) {
        if (current[c] && !previous_basis[c]) subset = false;
        if (!current[c] && previous_basis[c]) strict = true;
      }
      if (!subset || !strict) throw std::logic_error("template_test: basis chain did not shrink strictly");
    }
    previous_basis = std::move(current);

    const Index ne = state.block_size(ColumnClass::Excessive);
    const Index nr = state.block_size(ColumnClass::Reducible);

    // Only the E and R columns decide which reducible monomials reduce
    // onto the basis: forward-eliminate E, then Gauss-Jordan the R block on
    // the rows that vanish on E.
    auto ws = state.workspace(ne + nr);
    const auto e_pivots = ws.eliminate(0, 0, ne, false);
    const auto first_r_row = static_cast<Index>(e_pivots.size());
    const auto r_pivots = ws.eliminate(first_r_row, ne, ne + nr, true);
    std::vector<char> is_r_pivot(static_cast<std::size_t>(nr), 0);
    for (auto c : r_pivots) is_r_pivot[static_cast<std::size_t>(c - ne)] = 1;
    std::vector<char> reduces(static_cast<std::size_t>(nr), 0);
    for (std::size_t k = 0; k < r_pivots.size(); ++k) {
      const Index row = first_r_row + static_cast<Index>(k);
      bool clean = true;
      for (Index j = 0; j < nr && clean; ++j)
        if (!is_r_pivot[static_cast<std::size_t>(j)] && ws.get(row, ne + j) != 0) clean = false;
      if (clean) reduces[static_cast<std::size_t>(r_pivots[k] - ne)] = 1;
    }

    if (trace) {
      auto& it = trace->iterations.back();
      it.macaulay = state.ordered_matrix();
      it.reduced = rref(it.macaulay).reduced;
      std::vector<Monomial> tilde;
      for (Index j = 0; j < nr; ++j)
        if (reduces[static_cast<std::size_t>(j)])
          tilde.push_back(state.support()[static_cast<std::size_t>(state.order()[static_cast<std::size_t>(ne + j)])]);
      it.reducible_tilde = MonomialSet(std::move(tilde));
    }

    bool changed = false;
    for (Index j = 0; j < nr; ++j) {
      if (!reduces[static_cast<std::size_t>(j)]) {
        state.mark_removed(static_cast<std::size_t>(state.order()[static_cast<std::size_t>(ne + j)]));
        changed = true;
      }
    }
    if (!changed) break;
  }

  MonomialSet excessive = state.block(ColumnClass::Excessive);
  MonomialSet reducible = state.block(ColumnClass::Reducible);
  MonomialSet basis = state.block(ColumnClass::Basis);
  auto c2 = find_c2_pairs(basis, arity);
  if (!c2) {
    if (trace) trace->outcome = TestOutcome::C2Failed;
    return std::nullopt;
  }

  // Rows that never become E or R pivots only carry relations among basis
  // monomials; the template keeps the pivot rows alone.
  const Index ne = state.block_size(ColumnClass::Excessive);
  const Index nr = state.block_size(ColumnClass::Reducible);
  const Index nb = state.block_size(ColumnClass::Basis);
  auto ws = state.workspace(ne + nr + nb);
  const auto first_r_row = static_cast<Index>(ws.eliminate(0, 0, ne, false).size());
  const auto r_pivots = ws.eliminate(first_r_row, ne, ne + nr, true);
  if (static_cast<Index>(r_pivots.size()) != nr) throw std::logic_error("template_test: reducible column without pivot");

  Template t;
  t.prime = field.modulus();
  t.variables = default_variable_names(arity);
  for (const auto& f : system) t.structure.push_back(f.support());
  t.action = action;
  t.shifts = shifts;
  std::vector<Index> kept(ws.row_origin().begin(), ws.row_origin().begin() + first_r_row + nr);
  std::sort(kept.begin(), kept.end());
  for (auto i : kept) t.rows.push_back(rows[static_cast<std::size_t>(i)].source);
  t.c2_pairs = std::move(*c2);

  // R pivots appear in column order, which is the order of the R set.
  t.reduced_block = ExactMatrix(field, nr, nb);
  for (Index i = 0; i < nr; ++i)
    for (Index j = 0; j < nb; ++j) t.reduced_block.data()(i, j) = ws.get(first_r_row + i, ne + nr + j);
  t.partition = {std::move(excessive), std::move(reducible), std::move(basis)};
  if (trace) trace->outcome = TestOutcome::Success;
  return t;
}

std::vector<Monomial> candidate_actions(std::size_t arity) {
  std::vector<Monomial> out;
  for (std::size_t i = 0; i < arity; ++i) out.push_back(Monomial::variable(arity, i, -1));
  for (std::size_t i = 0; i < arity; ++i) out.push_back(Monomial::variable(arity, i, 1));
  return out;
}

ShiftTuple expand_shifts(const ShiftTuple& shifts) {
  ShiftTuple out;
  out.reserve(shifts.size());
  for (const auto& a : shifts) {
    std::vector<Monomial> ms(a.begin(), a.end());
    for (const auto& m : a) {
      for (std::size_t i = 0; i < m.arity(); ++i) {
        ms.push_back(m * Monomial::variable(m.arity(), i, 1));
        ms.push_back(m * Monomial::variable(m.arity(), i, -1));
      }
    }
    out.emplace_back(std::move(ms));
  }
  return out;
}

bool support_spans_lattice(const LaurentSystem<Fp>& system) {
  const std::size_t k = system_arity(system);
  std::vector<std::int64_t> diffs;
  Index count = 0;
  for (const auto& f : system) {
    if (f.empty()) continue;
    const Monomial& base = f.terms().front().monomial;
    for (std::size_t t = 1; t < f.size(); ++t) {
      for (std::size_t i = 0; i < k; ++i) diffs.push_back(f.terms()[t].monomial[i] - base[i]);
      ++count;
    }
  }
  if (count == 0) return false;
  auto m = ExactMatrix::from_integers(PrimeField{}, count, static_cast<Index>(k), diffs);
  return rank(m) == static_cast<Index>(k);
}

std::optional<FinderResult> template_finder(const LaurentSystem<Fp>& system, const FinderOptions& options) {
  if (options.max_iterations < 1) throw std::invalid_argument("template_finder: iteration bound must be >= 1");
  if (system.empty() || !support_spans_lattice(system)) return std::nullopt;
  const std::size_t arity = system_arity(system);
  ShiftTuple shifts = unit_shifts(system.size(), arity);
  const auto actions = candidate_actions(arity);
  for (int iteration = 1; iteration <= options.max_iterations; ++iteration) {
    std::optional<FinderResult> best;
    std::size_t best_area = 0;
    for (const auto& a : actions) {
      auto t = template_test(system, shifts, a);
      if (!t) continue;
      if (options.mode == FinderMode::FirstHit) return FinderResult{std::move(*t), iteration};
      const auto pruned = prune_excessive_columns(system, *t);
      const std::size_t area = pruned.row_count() * pruned.column_count();
      if (!best || area < best_area ||
          (area == best_area && t->solving_size() < best->tmpl.solving_size())) {
        best = FinderResult{std::move(*t), iteration};
        best_area = area;
      }
    }
    if (best) return best;
    if (iteration < options.max_iterations) shifts = expand_shifts(shifts);
  }
  return std::nullopt;
}

ReductionResult template_reduction(const LaurentSystem<Fp>& system, const Template& found) {
  ReductionResult result{found.shifts, found, {}};
  std::size_t bound = found.solving_size();
  for (std::size_t j = 0; j < found.shifts.size(); ++j) {
    for (const auto& m : found.shifts[j]) {
      if (result.shifts[j].size() <= 1) break;
      ShiftTuple trial = result.shifts;
      trial[j].erase(m);
      auto t = template_test(system, trial, found.action);
      ReductionStep step{j, m, false, t ? t->solving_size() : 0, shift_count(trial), bound};
      if (t && t->solving_size() <= bound) {
        bound = t->solving_size();
        step.accepted = true;
        step.bound = bound;
        result.shifts = std::move(trial);
        result.tmpl = std::move(*t);
      }
      result.audit.push_back(std::move(step));
    }
  }
  auto final_template = template_test(system, result.shifts, found.action);
  if (!final_template) throw std::logic_error("template_reduction: reduced shifts no longer yield a template");
  final_template->variables = found.variables;
  result.tmpl = std::move(*final_template);
  return result;
}

Template prune_excessive_columns(const LaurentSystem<Fp>& system, const Template& tmpl) {
  const ExactMatrix m = template_matrix(system, tmpl);
  const auto ne = static_cast<Index>(tmpl.partition.excessive.size());
  std::vector<Index> block(static_cast<std::size_t>(ne));
  for (Index j = 0; j < ne; ++j) block[static_cast<std::size_t>(j)] = j;
  const auto dependent = dependent_columns(m, block);

  std::vector<char> drop(static_cast<std::size_t>(m.cols()), 0);
  for (auto c : dependent) drop[static_cast<std::size_t>(c)] = 1;
  std::vector<Index> keep;
  for (Index j = 0; j < m.cols(); ++j)
    if (!drop[static_cast<std::size_t>(j)]) keep.push_back(j);
  const auto kept_rows = independent_rows(m.select_columns(keep));

  Template out = tmpl;
  std::vector<Monomial> excessive;
  for (Index j = 0; j < ne; ++j)
    if (!drop[static_cast<std::size_t>(j)]) excessive.push_back(tmpl.partition.excessive[static_cast<std::size_t>(j)]);
  out.partition.excessive = MonomialSet(std::move(excessive));
  out.rows.clear();
  for (auto i : kept_rows) out.rows.push_back(tmpl.rows[static_cast<std::size_t>(i)]);

  if (out.column_count() - out.row_count() != out.solving_size()) {
    throw std::logic_error("prune_excessive_columns: #cols - #rows = " +
                           std::to_string(out.column_count()) + " - " + std::to_string(out.row_count()) +
                           " differs from #basis = " + std::to_string(out.solving_size()));
  }
  return out;
}

bool check_block_structure(const LaurentSystem<Fp>& system, const Template& tmpl) {
  const auto [reduced, pivots] = rref(template_matrix(system, tmpl));
  const auto ne = static_cast<Index>(tmpl.partition.excessive.size());
  const auto nr = static_cast<Index>(tmpl.partition.reducible.size());
  const auto nb = static_cast<Index>(tmpl.partition.basis.size());
  std::vector<Index> r_rows(static_cast<std::size_t>(nr), -1);
  for (std::size_t k = 0; k < pivots.size(); ++k) {
    if (pivots[k] >= ne + nr) return false;
    if (pivots[k] >= ne) r_rows[static_cast<std::size_t>(pivots[k] - ne)] = static_cast<Index>(k);
  }
  for (Index i = 0; i < nr; ++i) {
    const Index row = r_rows[static_cast<std::size_t>(i)];
    if (row < 0) return false;
    for (Index j = 0; j < nb; ++j)
      if (reduced(row, ne + nr + j) != tmpl.reduced_block(i, j)) return false;
  }
  return true;
}

}  // namespace etgen
