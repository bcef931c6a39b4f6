#include "etgen/planted_suite.hpp"

#include <chrono>
#include <stdexcept>

namespace etgen {

PlantedParameters planted_parameters(std::uint64_t seed) {
  PlantedParameters p;
  p.arity = 2 + seed % 2;
  p.roots = 3 + (seed / 2) % 6;
  p.polys = p.arity + 1;
  p.support_size = p.roots + p.polys;
  return p;
}

PlantedReport run_planted_case(std::uint64_t seed, const PlantedParameters& params, int max_iterations,
                               const PrimeField& field) {
  const auto start = std::chrono::steady_clock::now();
  PlantedReport report;
  report.seed = seed;
  report.params = params;
  const PlantedInstance inst = plant_roots(params.arity, params.roots, params.support_size, params.polys, seed, field);

  const auto found = template_finder(inst.system, {max_iterations, FinderMode::FirstHit});
  if (found) {
    report.found = true;
    report.iteration = found->iteration;
    try {
      const Template pruned = prune_excessive_columns(inst.system, found->tmpl);
      report.basis = pruned.solving_size();
      report.rows_found = pruned.row_count();
      report.vanishing = verify_vanishing(inst.system, pruned, inst.roots);
      report.spectrum = verify_action_spectrum(pruned, inst.roots);

      const ReductionResult reduced = template_reduction(inst.system, found->tmpl);
      const Template small = prune_excessive_columns(inst.system, reduced.tmpl);
      report.rows_reduced = small.row_count();
      report.identity = true;

      report.monotone = small.solving_size() <= found->tmpl.solving_size();
      std::size_t rows = shift_count(found->tmpl.shifts);
      for (const auto& step : reduced.audit) {
        if (!step.accepted) continue;
        if (step.solving_size > found->tmpl.solving_size() || step.solving_size > step.bound || step.rows > rows)
          report.monotone = false;
        rows = step.rows;
      }
      report.vanishing = report.vanishing && verify_vanishing(inst.system, small, inst.roots);
      report.spectrum = report.spectrum && verify_action_spectrum(small, inst.roots);
    } catch (const std::logic_error&) {
      report.identity = false;
    }
  }
  report.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace etgen
