#include "etgen/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <limits>
#include <random>
#include <sstream>
#include <thread>

#include "etgen/h13f.hpp"
#include "etgen/triangulation.hpp"

namespace etgen {

namespace {

std::string format_number(double v) {
  std::ostringstream out;
  out << std::setprecision(6) << v;
  return out.str();
}

std::optional<double> median(std::vector<double> values) {
  if (values.empty()) return std::nullopt;
  const auto mid = values.begin() + static_cast<std::ptrdiff_t>(values.size() / 2);
  std::nth_element(values.begin(), mid, values.end());
  if (values.size() % 2 == 1) return *mid;
  const double upper = *mid;
  const double lower = *std::max_element(values.begin(), mid);
  return 0.5 * (lower + upper);
}

LaurentSystem<double> sampled_system(const ProblemDef& def, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  std::uniform_real_distribution<double> exponent(-1.0, 1.0);
  LaurentSystem<double> system;
  for (const auto& f : def.polys) {
    const double scale = std::pow(10.0, exponent(rng));
    std::vector<Term<double>> terms;
    for (const auto& t : f) terms.push_back({t.monomial, t.coeff.is_generic() ? gauss(rng) : scale * t.coeff.to_double()});
    system.emplace_back(std::move(terms));
  }
  return system;
}

std::vector<Eigen::VectorXd> real_candidates(const RootSet& roots) {
  std::vector<Eigen::VectorXd> out;
  for (const auto* list : {&roots.roots, &roots.rejected})
    for (const auto& r : *list)
      if (r.point.size() > 0 && r.real) out.push_back(r.point.real());
  return out;
}

}  // namespace

std::optional<FinderResult> generate_template(const ProblemDef& def, const GenerateOptions& options) {
  const PrimeField field(options.prime);
  const auto system = generic_system(def, field);
  auto found = template_finder(system, {options.max_iterations, options.mode.value_or(def.finder)});
  if (!found) return std::nullopt;
  found->tmpl = prune_excessive_columns(system, found->tmpl);
  found->tmpl.variables = def.variables;
  return found;
}

ReductionResult reduce_template(const ProblemDef& def, const Template& tmpl) {
  if (tmpl.arity() != def.arity()) throw StructureMismatch("template and problem have different variable counts");
  const auto system = generic_system(def, PrimeField(tmpl.prime));
  if (system.size() != tmpl.structure.size()) throw StructureMismatch("template and problem have different polynomial counts");
  for (std::size_t j = 0; j < system.size(); ++j)
    if (system[j].support() != tmpl.structure[j])
      throw StructureMismatch("polynomial " + std::to_string(j) + " has a different support than the template");
  auto result = template_reduction(system, tmpl);
  result.tmpl = prune_excessive_columns(system, result.tmpl);
  result.tmpl.variables = tmpl.variables;
  return result;
}

TrialInstance trial_instance(const ProblemDef& def, std::uint64_t seed) {
  if (def.builder == Builder::Triangulation3) {
    const auto scene = synth_triangulation_scene(seed);
    return {triangulation_system(canonicalize(scene).numerators), Eigen::VectorXd(scene.point)};
  }
  if (def.builder) {
    const auto scene = synth_h13f_scene(seed);
    return {h13f_system(scene.data, *def.builder == Builder::H13f20), Eigen::VectorXd(scene.truth)};
  }
  std::mt19937_64 rng(seed);
  return {sampled_system(def, rng), std::nullopt};
}

TrialResult run_trial(const ProblemDef& def, const Template& tmpl, std::uint64_t seed, std::size_t trial) {
  TrialResult out;
  out.trial = trial;
  SolveOptions options;
  options.d0 = def.expected_roots.value_or(tmpl.solving_size());
  try {
    SolveTiming timing;
    if (def.builder == Builder::Triangulation3) {
      const auto scene = synth_triangulation_scene(seed);
      const auto canonical = canonicalize(scene);
      const auto roots = solve(tmpl, triangulation_system(canonical.numerators), options, &timing);
      out.aggregate = roots.aggregate;
      std::vector<Eigen::Vector3d> real;
      for (const auto& p : real_candidates(roots)) real.push_back(p);
      const auto placement = best_placement(scene, canonical, real);
      out.placement_error = placement ? placement->error : std::numeric_limits<double>::infinity();
    } else {
      const auto inst = trial_instance(def, seed);
      const auto roots = solve(tmpl, inst.system, options, &timing);
      out.aggregate = roots.aggregate;
      if (inst.truth) {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& p : real_candidates(roots)) best = std::min(best, (p - *inst.truth).norm());
        out.placement_error = best;
      }
    }
    out.online_ms = timing.online_ms;
    out.fill_ms = timing.fill_ms;
  } catch (const std::runtime_error& e) {
    out.failure = e.what();
  }
  return out;
}

BenchReport run_bench(const ProblemDef& def, const Template& tmpl, const BenchOptions& options) {
  BenchReport report;
  report.trials.resize(options.trials);
  unsigned threads = options.threads ? options.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(options.trials, 1)));
  auto work = [&](unsigned lane) {
    for (std::size_t i = lane; i < options.trials; i += threads)
      report.trials[i] = run_trial(def, tmpl, options.first_seed + i, i);
  };
  std::vector<std::thread> pool;
  for (unsigned lane = 1; lane < threads; ++lane) pool.emplace_back(work, lane);
  work(0);
  for (auto& t : pool) t.join();

  std::vector<double> aggregates;
  std::size_t placed = 0;
  bool any_placement = false;
  for (const auto& t : report.trials) {
    aggregates.push_back(t.aggregate.value_or(std::numeric_limits<double>::infinity()));
    if (t.placement_error) any_placement = true;
    if (t.placement_error && def.accept_placement_error && *t.placement_error < *def.accept_placement_error) ++placed;
  }
  report.median_aggregate = median(aggregates);
  if (any_placement && def.accept_placement_error && options.trials > 0)
    report.placement_fraction = static_cast<double>(placed) / static_cast<double>(options.trials);

  if (def.accept_median_aggregate) {
    const bool ok = report.median_aggregate && *report.median_aggregate <= *def.accept_median_aggregate;
    report.accepted = report.accepted && ok;
    report.verdicts.push_back(std::string(ok ? "PASS" : "FAIL") + " median aggregate " +
                              format_number(report.median_aggregate.value_or(NAN)) + " <= " +
                              format_number(*def.accept_median_aggregate));
  }
  if (def.accept_placement_error) {
    const double fraction = report.placement_fraction.value_or(0.0);
    const double needed = def.accept_placement_fraction.value_or(1.0);
    const bool ok = fraction >= needed;
    report.accepted = report.accepted && ok;
    report.verdicts.push_back(std::string(ok ? "PASS" : "FAIL") + " placement error < " +
                              format_number(*def.accept_placement_error) + " in " + format_number(100.0 * fraction) +
                              "% of trials, need " + format_number(100.0 * needed) + "%");
  }
  return report;
}

std::string bench_csv(const BenchReport& report) {
  std::ostringstream out;
  out << std::setprecision(10);
  out << "trial,aggregate,placement_error,time_ms_online,time_ms_fill\n";
  for (const auto& t : report.trials) {
    out << t.trial << ',';
    if (t.failure.empty()) {
      if (t.aggregate) out << *t.aggregate;
      out << ',';
      if (t.placement_error) out << *t.placement_error;
      out << ',' << t.online_ms << ',' << t.fill_ms;
    } else {
      out << ",,,";
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace etgen
