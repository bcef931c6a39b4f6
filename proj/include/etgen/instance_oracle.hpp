#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Core>

#include "etgen/exact_matrix.hpp"
#include "etgen/laurent.hpp"
#include "etgen/template.hpp"

namespace etgen {

using FpPoint = std::vector<Fp>;

/// A system over GF(p) together with toric points it is known to vanish on.
struct PlantedInstance {
  LaurentSystem<Fp> system;
  std::vector<FpPoint> roots;
  MonomialSet support;
  std::uint64_t seed = 0;
};

/// Rows: points; columns: monomials of `support`; entry m(point).
ExactMatrix evaluation_matrix(const MonomialSet& support, const std::vector<FpPoint>& points, const PrimeField& field);

/// Random system with `polys` polynomials on a shared random support of
/// `support_size` monomials (always containing 1 and every x_i, the rest
/// drawn from the exponent box [-3, 3]^k) that vanishes at `roots` random
/// distinct toric points. Resamples up to 32 times when the evaluation
/// nullspace is too small; throws std::runtime_error after that.
PlantedInstance plant_roots(std::size_t arity, std::size_t roots, std::size_t support_size, std::size_t polys,
                            std::uint64_t seed, const PrimeField& field = PrimeField{});

/// Same construction on a fixed support and fixed roots.
PlantedInstance plant_roots_on_support(const MonomialSet& support, const std::vector<FpPoint>& roots,
                                       std::size_t polys, std::uint64_t seed, const PrimeField& field = PrimeField{});

/// Every template row (shift of an input polynomial) vanishes at every
/// root. Throws std::logic_error if some row polynomial is zero.
bool verify_vanishing(const LaurentSystem<Fp>& system, const Template& tmpl, const std::vector<FpPoint>& roots);

/// T0 over GF(p): row i is e_j when a * B[i] = B[j], and the negated
/// reduced-block row of r when a * B[i] = r is reducible.
ExactMatrix action_matrix_mod_p(const Template& tmpl);

/// det(T0 - a(root) I) = 0 mod p for every root.
bool verify_action_spectrum(const Template& tmpl, const std::vector<FpPoint>& roots);

/// Real system vanishing at the given real points: for each structure j,
/// a random combination of the nullspace of the evaluation matrix of
/// structure[j]. Throws std::runtime_error if a nullspace is empty.
LaurentSystem<double> planted_real_system(const std::vector<MonomialSet>& structure,
                                          const std::vector<Eigen::VectorXd>& roots, std::mt19937_64& rng);

}  // namespace etgen
