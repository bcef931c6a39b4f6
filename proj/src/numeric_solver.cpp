#include "etgen/numeric_solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <string>
#include <unordered_map>

#include <Eigen/Eigenvalues>

namespace etgen {

namespace {

constexpr double kPivotTolerance = 1e-12;
constexpr double kToricTolerance = 1e-8;
constexpr double kRealTolerance = 1e-6;

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point since) {
  return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

/// Row-normalized Macaulay matrix of the unshifted system.
struct ResidualModel {
  std::vector<Monomial> monomials;
  Eigen::MatrixXcd matrix;

  explicit ResidualModel(const LaurentSystem<double>& system) {
    const MonomialSet support = etgen::support(system);
    monomials = support.items();
    Eigen::MatrixXd real =
        Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(system.size()), static_cast<Eigen::Index>(support.size()));
    for (std::size_t i = 0; i < system.size(); ++i)
      for (const auto& t : system[i].terms())
        real(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(support.index_of(t.monomial))) = t.coeff;
    for (Eigen::Index i = 0; i < real.rows(); ++i) {
      const double n = real.row(i).norm();
      if (n > 0.0) real.row(i) /= n;
    }
    matrix = real.cast<std::complex<double>>();
  }

  double operator()(const Eigen::VectorXcd& point) const {
    constexpr double inf = std::numeric_limits<double>::infinity();
    if (point.size() == 0 || !point.allFinite()) return inf;
    Eigen::VectorXcd z(static_cast<Eigen::Index>(monomials.size()));
    const std::span<const std::complex<double>> p(point.data(), static_cast<std::size_t>(point.size()));
    for (std::size_t c = 0; c < monomials.size(); ++c) z(static_cast<Eigen::Index>(c)) = evaluate(monomials[c], p);
    const double norm = z.norm();
    if (!z.allFinite() || !std::isfinite(norm) || norm == 0.0) return inf;
    return (matrix * (z / norm)).norm();
  }
};

}  // namespace

bool is_real_point(const Eigen::VectorXcd& point) {
  for (Eigen::Index i = 0; i < point.size(); ++i)
    if (std::abs(point(i).imag()) >= kRealTolerance * (1.0 + std::abs(point(i).real()))) return false;
  return true;
}

void check_structure(const Template& tmpl, const LaurentSystem<double>& system) {
  if (system.size() != tmpl.structure.size()) {
    throw StructureMismatch("instance has " + std::to_string(system.size()) + " polynomials, template expects " +
                            std::to_string(tmpl.structure.size()));
  }
  for (std::size_t j = 0; j < system.size(); ++j) {
    if (system[j].arity() != tmpl.arity()) throw StructureMismatch("polynomial " + std::to_string(j) + ": arity mismatch");
    if (system[j].support() != tmpl.structure[j]) {
      throw StructureMismatch("polynomial " + std::to_string(j) + ": support differs from the template structure");
    }
  }
}

NumericMatrix instantiate(const Template& tmpl, const LaurentSystem<double>& system) {
  check_structure(tmpl, system);
  const auto columns = tmpl.columns();
  std::unordered_map<Monomial, Eigen::Index, MonomialHash> col;
  col.reserve(columns.size() * 2);
  for (std::size_t j = 0; j < columns.size(); ++j) col.emplace(columns[j], static_cast<Eigen::Index>(j));
  NumericMatrix m = NumericMatrix::Zero(static_cast<Eigen::Index>(tmpl.rows.size()), static_cast<Eigen::Index>(columns.size()));
  for (std::size_t i = 0; i < tmpl.rows.size(); ++i) {
    const auto& src = tmpl.rows[i];
    for (const auto& t : system[src.poly].terms()) {
      auto it = col.find(t.monomial * src.shift);
      if (it != col.end()) m(static_cast<Eigen::Index>(i), it->second) = t.coeff;
    }
  }
  return m;
}

ActionPencil reduce_and_assemble(const NumericMatrix& m, const Template& tmpl) {
  const auto ne = static_cast<Eigen::Index>(tmpl.partition.excessive.size());
  const auto nr = static_cast<Eigen::Index>(tmpl.partition.reducible.size());
  const auto nb = static_cast<Eigen::Index>(tmpl.partition.basis.size());
  const Eigen::Index n = ne + nr;
  if (m.cols() != n + nb) throw std::invalid_argument("reduce_and_assemble: column count does not match the template");
  if (m.rows() < n) throw DegenerateInstance("template has fewer rows than eliminated columns");
  if (!m.allFinite()) throw std::invalid_argument("reduce_and_assemble: non-finite coefficients");

  NumericMatrix a = m;
  const Eigen::VectorXd scale = m.cwiseAbs().colwise().maxCoeff().transpose();
  for (Eigen::Index c = 0; c < n; ++c) {
    Eigen::Index best = 0;
    const double pivot_abs = a.col(c).tail(a.rows() - c).cwiseAbs().maxCoeff(&best);
    best += c;
    if (scale(c) == 0.0 || pivot_abs < kPivotTolerance * scale(c)) {
      throw DegenerateInstance("missing pivot in template column " + std::to_string(c));
    }
    if (best != c) a.row(best).swap(a.row(c));
    const Eigen::Index below = a.rows() - c - 1;
    const Eigen::Index right = a.cols() - c - 1;
    if (below > 0 && right > 0) {
      const Eigen::VectorXd factors = a.col(c).tail(below) / a(c, c);
      a.bottomRightCorner(below, right).noalias() -= factors * a.row(c).tail(right);
    }
    a.col(c).tail(below).setZero();
  }

  // The R rows of the reduced form only depend on the trailing R x R triangle.
  const Eigen::MatrixXd reduced =
      a.block(ne, ne, nr, nr).triangularView<Eigen::Upper>().solve(a.block(ne, n, nr, nb));

  ActionPencil pencil{Eigen::MatrixXd::Zero(nb, nb), tmpl.partition.basis, tmpl.c2_pairs, tmpl.action,
                      all_c2_pairs(tmpl.partition.basis, tmpl.arity())};
  for (Eigen::Index i = 0; i < nb; ++i) {
    const Monomial image = tmpl.action * tmpl.partition.basis[static_cast<std::size_t>(i)];
    if (const auto j = tmpl.partition.basis.index_of(image); j < tmpl.partition.basis.size()) {
      pencil.t0(i, static_cast<Eigen::Index>(j)) = 1.0;
      continue;
    }
    const auto r = tmpl.partition.reducible.index_of(image);
    if (r == tmpl.partition.reducible.size()) throw std::logic_error("action image outside R and B");
    pencil.t0.row(i) = -reduced.row(static_cast<Eigen::Index>(r));
  }
  if (!pencil.t0.allFinite()) throw DegenerateInstance("non-finite action matrix");
  return pencil;
}

std::vector<std::vector<C2Pair>> all_c2_pairs(const MonomialSet& basis, std::size_t arity) {
  std::vector<std::vector<C2Pair>> pairs(arity);
  for (std::size_t i = 0; i < arity; ++i) {
    const Monomial xi = Monomial::variable(arity, i);
    for (std::size_t r = 0; r < basis.size(); ++r)
      if (const std::size_t q = basis.index_of(xi * basis[r]); q < basis.size()) pairs[i].push_back({q, r});
  }
  return pairs;
}

std::vector<Root> eigen_roots(const ActionPencil& pencil) {
  Eigen::EigenSolver<Eigen::MatrixXd> es(pencil.t0, true);
  if (es.info() != Eigen::Success) throw SolverFailure("eigendecomposition did not converge");
  const Eigen::VectorXcd values = es.eigenvalues();
  const Eigen::MatrixXcd vectors = es.eigenvectors();
  std::vector<Root> roots;
  roots.reserve(static_cast<std::size_t>(values.size()));
  const auto k = static_cast<Eigen::Index>(pencil.c2_pairs.size());
  for (Eigen::Index e = 0; e < values.size(); ++e) {
    const Eigen::VectorXcd u = vectors.col(e);
    const double unorm = u.cwiseAbs().maxCoeff();
    Root root;
    root.eigenvalue = values(e);
    root.point.resize(k);
    for (Eigen::Index i = 0; i < k; ++i) {
      C2Pair pair = pencil.c2_pairs[static_cast<std::size_t>(i)];
      if (static_cast<std::size_t>(i) < pencil.readout_pairs.size()) {
        for (const auto& candidate : pencil.readout_pairs[static_cast<std::size_t>(i)])
          if (std::abs(u(static_cast<Eigen::Index>(candidate.r))) > std::abs(u(static_cast<Eigen::Index>(pair.r))))
            pair = candidate;
      }
      const std::complex<double> den = u(static_cast<Eigen::Index>(pair.r));
      if (std::abs(den) < kToricTolerance * unorm) {
        root.point.resize(0);
        break;
      }
      root.point(i) = u(static_cast<Eigen::Index>(pair.q)) / den;
    }
    root.real = root.point.size() > 0 && is_real_point(root.point);
    roots.push_back(std::move(root));
  }
  return roots;
}

double residual(const LaurentSystem<double>& system, const Eigen::VectorXcd& point) {
  return ResidualModel(system)(point);
}

std::optional<double> residual_error(const LaurentSystem<double>& system, std::vector<Root>& candidates, std::size_t d0) {
  const ResidualModel model(system);
  std::vector<double> eps;
  eps.reserve(candidates.size());
  for (auto& c : candidates) {
    c.residual = model(c.point);
    eps.push_back(c.residual);
  }
  if (d0 == 0 || d0 > eps.size()) return std::nullopt;
  std::partial_sort(eps.begin(), eps.begin() + static_cast<std::ptrdiff_t>(d0), eps.end());
  double sum = 0.0;
  for (std::size_t i = 0; i < d0; ++i) sum += eps[i] * eps[i];
  return 0.5 * std::log10(sum);
}

RootSet solve(const Template& tmpl, const LaurentSystem<double>& system, const SolveOptions& options,
              SolveTiming* timing) {
  auto start = Clock::now();
  const NumericMatrix m = instantiate(tmpl, system);
  if (timing) timing->fill_ms = elapsed_ms(start);

  start = Clock::now();
  const ActionPencil pencil = reduce_and_assemble(m, tmpl);
  std::vector<Root> candidates = eigen_roots(pencil);
  if (timing) timing->online_ms = elapsed_ms(start);

  RootSet out;
  out.aggregate = residual_error(system, candidates, options.d0);
  for (auto& c : candidates) {
    const bool keep = c.point.size() > 0 && c.residual <= options.residual_tolerance && (c.real || options.include_complex);
    (keep ? out.roots : out.rejected).push_back(std::move(c));
  }
  const auto by_eigenvalue = [](const Root& a, const Root& b) {
    if (a.eigenvalue.real() != b.eigenvalue.real()) return a.eigenvalue.real() < b.eigenvalue.real();
    return a.eigenvalue.imag() < b.eigenvalue.imag();
  };
  std::sort(out.roots.begin(), out.roots.end(), by_eigenvalue);
  std::sort(out.rejected.begin(), out.rejected.end(), by_eigenvalue);
  return out;
}

}  // namespace etgen
