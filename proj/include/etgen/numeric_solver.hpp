#pragma once

#include <complex>
#include <optional>
#include <stdexcept>
#include <vector>

#include <Eigen/Core>

#include "etgen/laurent.hpp"
#include "etgen/template.hpp"

namespace etgen {

using NumericMatrix = Eigen::MatrixXd;

/// Rank collapse where the template requires a pivot.
class DegenerateInstance : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Eigensolver failure or other online-phase breakdown.
class SolverFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Instance supports differ from the supports the template was built for.
class StructureMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// a T1 B - T0 B with T1 = I for monomial actions.
struct ActionPencil {
  Eigen::MatrixXd t0;
  MonomialSet basis;
  std::vector<C2Pair> c2_pairs;
  Monomial action;
  /// Every pair (q, r) with B[q] = x_i B[r], per variable. The read-out
  /// divides by the largest available |u[r]|.
  std::vector<std::vector<C2Pair>> readout_pairs;
};

/// All (q, r) with basis[q] = x_i basis[r], per variable, in basis order.
std::vector<std::vector<C2Pair>> all_c2_pairs(const MonomialSet& basis, std::size_t arity);

struct Root {
  Eigen::VectorXcd point;
  std::complex<double> eigenvalue;
  /// Normalized residual of the original system; +inf for non-toric points.
  double residual = 0.0;
  bool real = false;
};

struct RootSet {
  /// Candidates passing the residual filter, sorted by eigenvalue.
  std::vector<Root> roots;
  /// Candidates rejected as non-toric or by residual.
  std::vector<Root> rejected;
  /// Half log10 of the sum of the d0 smallest squared residuals.
  std::optional<double> aggregate;
};

struct SolveOptions {
  /// Candidates with residual above this are rejected.
  double residual_tolerance = 1e-6;
  /// Keep candidates with non-negligible imaginary parts.
  bool include_complex = false;
  /// Number of residuals in the aggregate; 0 leaves it unset.
  std::size_t d0 = 0;
};

struct SolveTiming {
  double fill_ms = 0.0;
  double online_ms = 0.0;
};

/// Checks that every polynomial's support equals the template structure.
void check_structure(const Template& tmpl, const LaurentSystem<double>& system);

/// Fills the template rows (pruned column order E | R | B) with real data.
NumericMatrix instantiate(const Template& tmpl, const LaurentSystem<double>& system);

/// Gauss-Jordan with partial pivoting on the E and R columns, then T0
/// assembly. Throws DegenerateInstance when a structural pivot is missing.
ActionPencil reduce_and_assemble(const NumericMatrix& m, const Template& tmpl);

/// Eigenpairs of T0 and root read-out x_i = u[q] / u[r], using for each
/// variable the pair with the largest |u[r]|. Eigenvectors where that
/// denominator is below 1e-8 |u|_inf are returned with an empty point.
std::vector<Root> eigen_roots(const ActionPencil& pencil);

/// eps_i = |M(F) Z_i / |Z_i|| with unit-length rows of M(F).
double residual(const LaurentSystem<double>& system, const Eigen::VectorXcd& point);

/// Fills residuals in place and returns the aggregate over the d0 smallest;
/// nullopt when d0 = 0 or fewer than d0 candidates exist.
std::optional<double> residual_error(const LaurentSystem<double>& system, std::vector<Root>& candidates, std::size_t d0);

/// Full online phase.
RootSet solve(const Template& tmpl, const LaurentSystem<double>& system, const SolveOptions& options = {},
              SolveTiming* timing = nullptr);

/// |Im| < 1e-6 (1 + |Re|) in every coordinate.
bool is_real_point(const Eigen::VectorXcd& point);

}  // namespace etgen
