#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "etgen/numeric_solver.hpp"
#include "etgen/problem.hpp"
#include "etgen/template_engine.hpp"

namespace etgen {

struct GenerateOptions {
  int max_iterations = 10;
  /// Overrides the problem's own finder setting.
  std::optional<FinderMode> mode;
  std::uint32_t prime = PrimeField::kDefaultPrime;
};

/// Finder plus column pruning on the problem's generic GF(p) instance.
/// The template carries the problem's variable names.
std::optional<FinderResult> generate_template(const ProblemDef& def, const GenerateOptions& options = {});

/// Reduction plus pruning of a template generated for `def`. Throws
/// StructureMismatch when the template was built for other supports.
ReductionResult reduce_template(const ProblemDef& def, const Template& tmpl);

/// Outcome of one online solve in a benchmark.
struct TrialResult {
  std::size_t trial = 0;
  std::optional<double> aggregate;
  /// Distance of the selected real root to the ground truth, when the
  /// problem has one.
  std::optional<double> placement_error;
  double online_ms = 0.0;
  double fill_ms = 0.0;
  /// Empty when the solve succeeded.
  std::string failure;
};

struct BenchOptions {
  std::size_t trials = 100;
  std::uint64_t first_seed = 0;
  /// 0 picks the hardware concurrency.
  unsigned threads = 0;
};

struct BenchReport {
  std::vector<TrialResult> trials;
  std::optional<double> median_aggregate;
  /// Share of trials with placement error below the problem's bound.
  std::optional<double> placement_fraction;
  /// One line per acceptance threshold of the problem.
  std::vector<std::string> verdicts;
  bool accepted = true;
};

/// Real instance of trial `trial`: builder problems draw a synthetic scene
/// from the trial seed, explicit problems get each polynomial rescaled by
/// a random factor, and `?` coefficients are drawn from N(0, 1).
struct TrialInstance {
  LaurentSystem<double> system;
  std::optional<Eigen::VectorXd> truth;
};

TrialInstance trial_instance(const ProblemDef& def, std::uint64_t seed);

/// Solves one trial. The placement for triangulation scenes is the real
/// candidate of least reprojection cost, residual filter disregarded.
TrialResult run_trial(const ProblemDef& def, const Template& tmpl, std::uint64_t seed, std::size_t trial);

BenchReport run_bench(const ProblemDef& def, const Template& tmpl, const BenchOptions& options = {});

/// `trial,aggregate,placement_error,time_ms_online,time_ms_fill` rows;
/// failed trials leave the numeric fields empty.
std::string bench_csv(const BenchReport& report);

}  // namespace etgen
