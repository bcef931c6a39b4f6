#pragma once

#include <cstdint>
#include <vector>

#include "etgen/instance_oracle.hpp"
#include "etgen/template_engine.hpp"

namespace etgen {

struct PlantedParameters {
  std::size_t arity = 2;
  std::size_t roots = 3;
  std::size_t support_size = 6;
  std::size_t polys = 3;
};

/// k alternates between 2 and 3 with the seed, d sweeps 3..8, and the
/// system has k + 1 polynomials on a shared support of d + k + 1
/// monomials.
PlantedParameters planted_parameters(std::uint64_t seed);

/// Outcome of generating, checking, and reducing one planted system.
struct PlantedReport {
  std::uint64_t seed = 0;
  PlantedParameters params;
  bool found = false;
  int iteration = 0;
  std::size_t basis = 0;
  bool vanishing = false;
  bool spectrum = false;
  /// #cols - #rows = #B after pruning, for the found and reduced templates.
  bool identity = false;
  /// No accepted deletion raised #B above the found size or grew the row count.
  bool monotone = false;
  std::size_t rows_found = 0;
  std::size_t rows_reduced = 0;
  double elapsed_ms = 0.0;

  bool passed() const { return found && vanishing && spectrum && identity && monotone; }
};

PlantedReport run_planted_case(std::uint64_t seed, const PlantedParameters& params, int max_iterations = 10,
                               const PrimeField& field = PrimeField{});

inline PlantedReport run_planted_case(std::uint64_t seed) { return run_planted_case(seed, planted_parameters(seed)); }

}  // namespace etgen
