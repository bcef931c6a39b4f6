#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "etgen/laurent.hpp"
#include "etgen/prime_field.hpp"
#include "etgen/template_engine.hpp"

namespace etgen {

/// Coefficient provider of one problem term.
struct Coefficient {
  enum class Kind { Integer, Rational, Real, Generic };
  Kind kind = Kind::Integer;
  std::int64_t num = 0;
  std::int64_t den = 1;
  double real = 0.0;

  static Coefficient integer(std::int64_t v) { return {Kind::Integer, v, 1, 0.0}; }
  static Coefficient rational(std::int64_t n, std::int64_t d) { return {Kind::Rational, n, d, 0.0}; }
  static Coefficient decimal(double v) { return {Kind::Real, 0, 1, v}; }
  static Coefficient generic() { return {Kind::Generic, 0, 1, 0.0}; }

  bool is_generic() const { return kind == Kind::Generic; }
  bool is_zero() const;
  /// Throws std::logic_error for generic coefficients.
  double to_double() const;
  /// Exact image in GF(p); generic coefficients need a sample.
  Fp to_field(const PrimeField& field) const;

  friend bool operator==(const Coefficient&, const Coefficient&) = default;
};

/// Parses an integer, `a/b`, a decimal real, or `?`.
Coefficient parse_coefficient(std::string_view text, std::size_t line = 0, std::size_t column = 0);
/// Canonical text; reals always contain '.' or an exponent.
std::string format_coefficient(const Coefficient& c);

struct ProblemTerm {
  Monomial monomial;
  Coefficient coeff;

  friend bool operator==(const ProblemTerm&, const ProblemTerm&) = default;
};

enum class Builder { Triangulation3, H13f20, H13f21 };

std::string_view builder_name(Builder b);

struct ProblemDef {
  std::string name;
  std::vector<std::string> variables;
  /// Explicit polynomial structures; empty when a builder supplies them.
  std::vector<std::vector<ProblemTerm>> polys;
  std::optional<std::size_t> expected_roots;
  std::uint64_t seed = 1;
  std::optional<Builder> builder;
  FinderMode finder = FinderMode::FirstHit;
  /// Thresholds checked by `bench`.
  std::optional<double> accept_median_aggregate;
  std::optional<double> accept_placement_error;
  std::optional<double> accept_placement_fraction;

  std::size_t arity() const { return variables.size(); }
  friend bool operator==(const ProblemDef&, const ProblemDef&) = default;
};

/// `etgen-problem 1` documents. Throws ParseError with line and column.
ProblemDef parse_problem(std::string_view document);
std::string format_problem(const ProblemDef& def);
ProblemDef load_problem(const std::filesystem::path& path);
void save_problem(const std::filesystem::path& path, const ProblemDef& def);

/// Generation-time instance over GF(p): explicit coefficients are mapped
/// exactly, `?` and builder data are sampled from the problem seed.
LaurentSystem<Fp> generic_system(const ProblemDef& def, const PrimeField& field);

/// Real instance of a problem whose coefficients are all explicit.
LaurentSystem<double> numeric_system(const ProblemDef& def);
bool has_numeric_coefficients(const ProblemDef& def);

/// Per-polynomial supports.
std::vector<MonomialSet> problem_structure(const ProblemDef& def);

/// `etgen-instance 1` documents: real coefficients keyed by
/// (polynomial index, monomial).
LaurentSystem<double> parse_instance(std::string_view document, std::vector<std::string>* variables = nullptr);
std::string format_instance(const LaurentSystem<double>& system, const std::vector<std::string>& variables);
LaurentSystem<double> load_instance(const std::filesystem::path& path, std::vector<std::string>* variables = nullptr);

}  // namespace etgen
