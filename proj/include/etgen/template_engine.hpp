#pragma once

#include <optional>
#include <span>
#include <vector>

#include "etgen/exact_matrix.hpp"
#include "etgen/laurent.hpp"
#include "etgen/template.hpp"

namespace etgen {

struct ShiftedRow {
  RowSource source;
  LaurentPoly<Fp> poly;
};

/// A * F in (polynomial, shift) order with shifts grevlex-descending.
/// Identical shifted polynomials are kept once.
std::vector<ShiftedRow> apply_shifts(const LaurentSystem<Fp>& system, const ShiftTuple& shifts);

/// Macaulay matrix: entry (i, j) is the coefficient of rows[i] at
/// column_order[j]. Throws std::invalid_argument if a row monomial is
/// missing from column_order.
ExactMatrix build_macaulay(const LaurentSystem<Fp>& rows, std::span<const Monomial> column_order);

/// Macaulay matrix of a template's rows in template column order. Row
/// monomials outside the template columns (pruned excessive columns) are
/// dropped.
ExactMatrix template_matrix(const LaurentSystem<Fp>& system, const Template& tmpl);

/// Permissible monomials of `support` for an action polynomial with the
/// given support, and the induced reducible / excessive sets.
Partition partition_for_action(const MonomialSet& support, std::span<const Monomial> action_support);
Partition partition_for_action(const MonomialSet& support, const Monomial& action);

/// State of one pass of the template test loop.
struct TestIteration {
  /// Monomials not yet excessive when the pass starts; the first pass
  /// starts from the whole support of A * F.
  MonomialSet support;
  Partition partition;
  /// Macaulay matrix and its reduced row echelon form, columns E | R | B.
  ExactMatrix macaulay;
  ExactMatrix reduced;
  MonomialSet reducible_tilde;
};

enum class TestOutcome { Success, EmptyBasis, C2Failed };

struct TemplateTestTrace {
  std::vector<TestIteration> iterations;
  TestOutcome outcome = TestOutcome::EmptyBasis;
};

/// Checks whether A * F admits an elimination template for the monomial
/// action `action`, returning it (unpruned) or nullopt.
///
/// Only the shifted rows that end up as E or R pivots are kept in the
/// template; the others reduce to relations among basis monomials alone.
/// With them dropped the echelon form has exactly the [* 0 *; 0 I M]
/// shape. The trace, when requested, records full echelon forms per pass.
std::optional<Template> template_test(const LaurentSystem<Fp>& system, const ShiftTuple& shifts,
                                      const Monomial& action, TemplateTestTrace* trace = nullptr);

/// x_1^-1, ..., x_k^-1, x_1, ..., x_k.
std::vector<Monomial> candidate_actions(std::size_t arity);

/// A_j <- A_j U { x^{+-1} m : m in A_j } for every j.
ShiftTuple expand_shifts(const ShiftTuple& shifts);

/// False when the exponent differences inside the polynomials do not span
/// Z^k, i.e. some torus direction is left unconstrained.
bool support_spans_lattice(const LaurentSystem<Fp>& system);

enum class FinderMode { FirstHit, Best };

struct FinderOptions {
  int max_iterations = 10;
  FinderMode mode = FinderMode::FirstHit;
};

struct FinderResult {
  Template tmpl;
  /// 1-based iteration at which the template was found.
  int iteration = 0;
};

std::optional<FinderResult> template_finder(const LaurentSystem<Fp>& system, const FinderOptions& options = {});

struct ReductionStep {
  std::size_t poly = 0;
  Monomial shift;
  bool accepted = false;
  /// Solving-set size of the tentative template, 0 if the test failed.
  std::size_t solving_size = 0;
  /// Shifted rows of the tentative tuple.
  std::size_t rows = 0;
  /// Bound d in force after this step.
  std::size_t bound = 0;
};

struct ReductionResult {
  ShiftTuple shifts;
  Template tmpl;
  std::vector<ReductionStep> audit;
};

/// Greedy single pass over every (j, m in A_j): drop the shift if the test
/// still succeeds without increasing the solving-set size.
ReductionResult template_reduction(const LaurentSystem<Fp>& system, const Template& found);

/// Removes linearly dependent excessive columns and dependent rows. Throws
/// std::logic_error if the result violates #cols - #rows = #basis.
Template prune_excessive_columns(const LaurentSystem<Fp>& system, const Template& tmpl);

/// Re-derives the echelon form of the template matrix and checks the block
/// shape and the stored reduced block.
bool check_block_structure(const LaurentSystem<Fp>& system, const Template& tmpl);

}  // namespace etgen
