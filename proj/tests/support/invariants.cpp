#include "invariants.hpp"

#include <algorithm>
#include <set>

#include "etgen/instance_oracle.hpp"
#include "etgen/template_io.hpp"

namespace etgen::testing {

namespace {

std::string describe(const Monomial& m) {
  std::string out = "(";
  for (std::size_t i = 0; i < m.arity(); ++i) out += (i ? "," : "") + std::to_string(m[i]);
  return out + ")";
}

bool disjoint(const MonomialSet& a, const MonomialSet& b) { return set_intersection(a, b).empty(); }

bool proper_subset(const MonomialSet& a, const MonomialSet& b) { return is_subset(a, b) && a.size() < b.size(); }

bool echelon_shape(const RrefResult& r) {
  const auto& m = r.reduced;
  const auto rank = static_cast<ExactMatrix::Index>(r.pivots.size());
  for (ExactMatrix::Index i = 0; i < m.rows(); ++i) {
    if (i >= rank) {
      for (ExactMatrix::Index j = 0; j < m.cols(); ++j)
        if (m(i, j) != 0) return false;
      continue;
    }
    const auto p = r.pivots[static_cast<std::size_t>(i)];
    if (i > 0 && p <= r.pivots[static_cast<std::size_t>(i - 1)]) return false;
    for (ExactMatrix::Index j = 0; j < p; ++j)
      if (m(i, j) != 0) return false;
    for (ExactMatrix::Index k = 0; k < m.rows(); ++k)
      if (m(k, p) != (k == i ? 1u : 0u)) return false;
  }
  return true;
}

}  // namespace

Monomial random_monomial(std::mt19937_64& rng, std::size_t arity, int bound) {
  std::uniform_int_distribution<int> e(-bound, bound);
  std::vector<int> exps(arity);
  for (auto& v : exps) v = e(rng);
  return Monomial::from_exponents(exps);
}

PropertyOutcome grevlex_order_property(std::size_t cases, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> arity_dist(1, 5);
  PropertyOutcome out;
  for (std::size_t c = 0; c < cases; ++c, ++out.cases) {
    const std::size_t k = arity_dist(rng);
    // Small exponent range so that ties and equal monomials occur often.
    const Monomial a = random_monomial(rng, k, 1 + static_cast<int>(c % 3));
    const Monomial b = random_monomial(rng, k, 1 + static_cast<int>(c % 3));
    const Monomial m = random_monomial(rng, k, 1 + static_cast<int>(c % 3));
    const auto ab = grevlex_cmp(a, b);
    const auto ba = grevlex_cmp(b, a);
    const std::string tag = describe(a) + " " + describe(b) + " " + describe(m);
    if ((ab == std::strong_ordering::equal) != (a == b)) out.fail("totality " + tag);
    if (ab != 0 && (ab < 0) == (ba < 0)) out.fail("antisymmetry " + tag);
    if (a.degree() != b.degree() && (ab > 0) != (a.degree() > b.degree())) out.fail("degree " + tag);
    if (grevlex_cmp(a * m, b * m) != ab) out.fail("translation " + tag);
    const auto bm = grevlex_cmp(b, m);
    if (ab > 0 && bm > 0 && grevlex_cmp(a, m) <= 0) out.fail("transitivity " + tag);
    if (ab < 0 && bm < 0 && grevlex_cmp(a, m) >= 0) out.fail("transitivity " + tag);
  }
  return out;
}

std::vector<std::vector<std::uint32_t>> brute_force_row_space(const ExactMatrix& m) {
  const std::uint32_t p = m.field().modulus();
  const auto rows = static_cast<std::size_t>(m.rows());
  const auto cols = static_cast<std::size_t>(m.cols());
  std::set<std::vector<std::uint32_t>> span;
  std::vector<std::uint32_t> coeffs(rows, 0);
  while (true) {
    std::vector<std::uint32_t> v(cols, 0);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j)
        v[j] = (v[j] + coeffs[i] * m(static_cast<ExactMatrix::Index>(i), static_cast<ExactMatrix::Index>(j))) % p;
    span.insert(std::move(v));
    std::size_t i = 0;
    while (i < rows && ++coeffs[i] == p) coeffs[i++] = 0;
    if (i == rows) break;
  }
  return {span.begin(), span.end()};
}

PropertyOutcome rref_property(std::size_t cases, std::uint64_t seed) {
  const PrimeField f7(7);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> rows_dist(1, 4), cols_dist(1, 6), entry(0, 6), sparsity(0, 3);
  PropertyOutcome out;
  for (std::size_t c = 0; c < cases; ++c, ++out.cases) {
    ExactMatrix m(f7, rows_dist(rng), cols_dist(rng));
    const int zeros = sparsity(rng);
    for (ExactMatrix::Index i = 0; i < m.rows(); ++i)
      for (ExactMatrix::Index j = 0; j < m.cols(); ++j) m.set(i, j, entry(rng) < zeros ? 0 : entry(rng));
    const std::string tag = "case " + std::to_string(c);
    const auto r = rref(m);
    if (!echelon_shape(r)) out.fail("echelon shape " + tag);
    const auto again = rref(r.reduced);
    if (!(again.reduced == r.reduced) || again.pivots != r.pivots) out.fail("idempotence " + tag);
    const auto span = brute_force_row_space(m);
    if (span != brute_force_row_space(r.reduced)) out.fail("row space " + tag);
    std::size_t expected = 1;
    for (std::size_t i = 0; i < r.pivots.size(); ++i) expected *= 7;
    if (span.size() != expected || rank(m) != static_cast<ExactMatrix::Index>(r.pivots.size()))
      out.fail("rank " + tag);
  }
  return out;
}

RandomTestCase random_test_case(std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> arity_dist(2, 3), roots_dist(1, 4);
  std::uniform_int_distribution<int> coin(0, 1);
  const std::size_t k = arity_dist(rng);
  const std::size_t d = roots_dist(rng);
  const auto planted = plant_roots(k, d, d + k + 1, k + 1, rng());
  RandomTestCase tc;
  tc.system = planted.system;
  tc.shifts = unit_shifts(tc.system.size(), k);
  if (coin(rng)) tc.shifts = expand_shifts(tc.shifts);
  const auto actions = candidate_actions(k);
  tc.action = actions[std::uniform_int_distribution<std::size_t>(0, actions.size() - 1)(rng)];
  return tc;
}

PropertyOutcome partition_property(std::size_t cases, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  PropertyOutcome out;
  for (std::size_t c = 0; c < cases; ++c, ++out.cases) {
    const auto tc = random_test_case(rng);
    TemplateTestTrace trace;
    const auto result = template_test(tc.system, tc.shifts, tc.action, &trace);
    const std::string tag = "case " + std::to_string(c);
    if (trace.iterations.empty()) {
      out.fail("no iterations " + tag);
      continue;
    }
    for (std::size_t l = 0; l < trace.iterations.size(); ++l) {
      const auto& it = trace.iterations[l];
      const auto& [e, r, b] = it.partition;
      if (!disjoint(e, r) || !disjoint(e, b) || !disjoint(r, b)) out.fail("overlap " + tag);
      if (set_union(set_union(e, r), b) != trace.iterations[0].support) out.fail("coverage " + tag);
      if (!is_subset(set_union(r, b), it.support)) out.fail("remaining columns " + tag);
      if (!is_subset(it.reducible_tilde, r)) out.fail("reducible subset " + tag);
      if (l > 0) {
        const auto& prev = trace.iterations[l - 1];
        if (!proper_subset(b, prev.partition.basis)) out.fail("basis chain " + tag);
        if (it.support != set_union(prev.reducible_tilde, prev.partition.basis)) out.fail("support chain " + tag);
      }
    }
    const bool success = trace.outcome == TestOutcome::Success;
    if (success != result.has_value()) out.fail("outcome " + tag);
    if (result) {
      if (result->partition.basis != trace.iterations.back().partition.basis) out.fail("final basis " + tag);
      if (!check_block_structure(tc.system, *result)) out.fail("block structure " + tag);
    }
  }
  return out;
}

PropertyOutcome serialization_property(std::size_t cases, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> letter(0, 25);
  PropertyOutcome out;
  for (std::size_t c = 0; c < cases; ++c, ++out.cases) {
    std::optional<Template> t;
    for (int attempt = 0; !t && attempt < 200; ++attempt) {
      const auto tc = random_test_case(rng);
      t = template_test(tc.system, tc.shifts, tc.action);
      if (t && (c % 2 == 1)) t = prune_excessive_columns(tc.system, *t);
    }
    if (!t) {
      out.fail("no template in 200 attempts");
      continue;
    }
    // Fresh variable names and block values widen the covered documents.
    std::set<std::string> names;
    while (names.size() < t->arity()) {
      std::string name(1, static_cast<char>('a' + letter(rng)));
      name += std::to_string(letter(rng));
      names.insert(name);
    }
    t->variables.assign(names.begin(), names.end());
    std::shuffle(t->variables.begin(), t->variables.end(), rng);
    std::uniform_int_distribution<std::uint32_t> value(0, t->prime - 1);
    auto& block = t->reduced_block.data();
    for (Eigen::Index i = 0; i < block.size(); ++i) block.data()[i] = value(rng);

    const std::string text = serialize_template(*t);
    const Template back = deserialize_template(text);
    if (!(back == *t)) out.fail("value round trip case " + std::to_string(c));
    if (serialize_template(back) != text) out.fail("byte round trip case " + std::to_string(c));
  }
  return out;
}

}  // namespace etgen::testing
