#include "etgen/instance_oracle.hpp"

#include <set>
#include <stdexcept>

#include <Eigen/LU>

namespace etgen {

namespace {

constexpr int kMaxAttempts = 32;

Fp random_unit(std::mt19937_64& rng, const PrimeField& field) {
  std::uniform_int_distribution<std::uint32_t> dist(1, field.modulus() - 1);
  return {dist(rng), field.modulus()};
}

std::vector<FpPoint> random_points(std::size_t arity, std::size_t count, std::mt19937_64& rng, const PrimeField& field) {
  std::set<std::vector<std::uint32_t>> seen;
  std::vector<FpPoint> points;
  while (points.size() < count) {
    FpPoint p;
    std::vector<std::uint32_t> key;
    for (std::size_t i = 0; i < arity; ++i) {
      p.push_back(random_unit(rng, field));
      key.push_back(p.back().value());
    }
    if (seen.insert(key).second) points.push_back(std::move(p));
  }
  return points;
}

MonomialSet random_support(std::size_t arity, std::size_t size, std::mt19937_64& rng) {
  std::vector<Monomial> ms{Monomial(arity)};
  for (std::size_t i = 0; i < arity; ++i) ms.push_back(Monomial::variable(arity, i));
  MonomialSet support(ms);
  if (size < support.size()) throw std::invalid_argument("support size below k + 1");
  std::size_t box = 1;
  for (std::size_t i = 0; i < arity; ++i) box *= 7;
  if (size > box) throw std::invalid_argument("support size exceeds the exponent box");
  std::uniform_int_distribution<int> exp(-3, 3);
  while (support.size() < size) {
    std::vector<int> e(arity);
    for (auto& v : e) v = exp(rng);
    support.insert(Monomial::from_exponents(e));
  }
  return support;
}

std::vector<LaurentPoly<Fp>> nullspace_combinations(const MonomialSet& support, const ExactMatrix& eval,
                                                     std::size_t polys, std::mt19937_64& rng,
                                                     const PrimeField& field) {
  const auto kernel = nullspace(eval);
  if (kernel.size() < polys) return {};
  std::vector<LaurentPoly<Fp>> system;
  for (std::size_t j = 0; j < polys; ++j) {
    std::vector<Fp> coeffs(support.size(), field.zero());
    for (const auto& v : kernel) {
      const Fp w = random_unit(rng, field);
      for (std::size_t c = 0; c < support.size(); ++c) coeffs[c] += w * Fp(v[c], field.modulus());
    }
    std::vector<Term<Fp>> terms;
    for (std::size_t c = 0; c < support.size(); ++c) terms.push_back({support[c], coeffs[c]});
    LaurentPoly<Fp> f(std::move(terms));
    if (f.is_constant()) return {};
    system.push_back(std::move(f));
  }
  return system;
}

}  // namespace

ExactMatrix evaluation_matrix(const MonomialSet& support, const std::vector<FpPoint>& points, const PrimeField& field) {
  ExactMatrix m(field, static_cast<ExactMatrix::Index>(points.size()), static_cast<ExactMatrix::Index>(support.size()));
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t c = 0; c < support.size(); ++c)
      m.set(static_cast<ExactMatrix::Index>(i), static_cast<ExactMatrix::Index>(c),
            evaluate(support[c], std::span<const Fp>(points[i])));
  return m;
}

PlantedInstance plant_roots(std::size_t arity, std::size_t roots, std::size_t support_size, std::size_t polys,
                            std::uint64_t seed, const PrimeField& field) {
  if (support_size < roots + 2) throw std::invalid_argument("plant_roots: support size must be at least d + 2");
  if (polys < arity) throw std::invalid_argument("plant_roots: need at least k polynomials");
  std::mt19937_64 rng(seed);
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    auto points = random_points(arity, roots, rng, field);
    auto support = random_support(arity, support_size, rng);
    auto system = nullspace_combinations(support, evaluation_matrix(support, points, field), polys, rng, field);
    if (system.empty()) continue;
    return {std::move(system), std::move(points), std::move(support), seed};
  }
  throw std::runtime_error("plant_roots: degenerate samples after 32 attempts");
}

PlantedInstance plant_roots_on_support(const MonomialSet& support, const std::vector<FpPoint>& roots,
                                       std::size_t polys, std::uint64_t seed, const PrimeField& field) {
  std::mt19937_64 rng(seed);
  const auto eval = evaluation_matrix(support, roots, field);
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    auto system = nullspace_combinations(support, eval, polys, rng, field);
    if (!system.empty()) return {std::move(system), roots, support, seed};
  }
  throw std::runtime_error("plant_roots_on_support: nullspace too small");
}

bool verify_vanishing(const LaurentSystem<Fp>& system, const Template& tmpl, const std::vector<FpPoint>& roots) {
  for (const auto& src : tmpl.rows) {
    const auto row = shift(system.at(src.poly), src.shift);
    if (row.empty()) throw std::logic_error("verify_vanishing: template row is the zero polynomial");
    for (const auto& p : roots)
      if (!evaluate(row, std::span<const Fp>(p)).is_zero()) return false;
  }
  return true;
}

ExactMatrix action_matrix_mod_p(const Template& tmpl) {
  const auto& basis = tmpl.partition.basis;
  const auto& reducible = tmpl.partition.reducible;
  const PrimeField field(tmpl.prime);
  const auto d = static_cast<ExactMatrix::Index>(basis.size());
  ExactMatrix t0(field, d, d);
  for (ExactMatrix::Index i = 0; i < d; ++i) {
    const Monomial image = tmpl.action * basis[static_cast<std::size_t>(i)];
    if (const auto j = basis.index_of(image); j < basis.size()) {
      t0.data()(i, static_cast<ExactMatrix::Index>(j)) = 1;
      continue;
    }
    const auto r = reducible.index_of(image);
    if (r == reducible.size()) throw std::logic_error("action image outside R and B");
    for (ExactMatrix::Index j = 0; j < d; ++j)
      t0.data()(i, j) = field.neg(tmpl.reduced_block(static_cast<ExactMatrix::Index>(r), j));
  }
  return t0;
}

bool verify_action_spectrum(const Template& tmpl, const std::vector<FpPoint>& roots) {
  const ExactMatrix t0 = action_matrix_mod_p(tmpl);
  const PrimeField& field = t0.field();
  for (const auto& p : roots) {
    const Fp lambda = evaluate(tmpl.action, std::span<const Fp>(p));
    ExactMatrix shifted = t0;
    for (ExactMatrix::Index i = 0; i < t0.rows(); ++i)
      shifted.data()(i, i) = field.sub(t0(i, i), lambda.value());
    if (!determinant(shifted).is_zero()) return false;
  }
  return true;
}

LaurentSystem<double> planted_real_system(const std::vector<MonomialSet>& structure,
                                          const std::vector<Eigen::VectorXd>& roots, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  LaurentSystem<double> system;
  for (const auto& support : structure) {
    Eigen::MatrixXd eval(static_cast<Eigen::Index>(roots.size()), static_cast<Eigen::Index>(support.size()));
    for (std::size_t i = 0; i < roots.size(); ++i) {
      const std::span<const double> point(roots[i].data(), static_cast<std::size_t>(roots[i].size()));
      for (std::size_t c = 0; c < support.size(); ++c)
        eval(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c)) = evaluate(support[c], point);
    }
    const Eigen::MatrixXd kernel = Eigen::FullPivLU<Eigen::MatrixXd>(eval).kernel();
    if (kernel.cols() == 0 || kernel.norm() == 0.0) throw std::runtime_error("planted_real_system: empty nullspace");
    Eigen::VectorXd w(kernel.cols());
    for (auto& v : w) v = gauss(rng);
    Eigen::VectorXd coeffs = kernel * w;
    coeffs /= coeffs.cwiseAbs().maxCoeff();
    std::vector<Term<double>> terms;
    for (std::size_t c = 0; c < support.size(); ++c) terms.push_back({support[c], coeffs(static_cast<Eigen::Index>(c))});
    system.emplace_back(std::move(terms));
  }
  return system;
}

}  // namespace etgen
