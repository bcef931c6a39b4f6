#include "etgen/problem.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include "etgen/h13f.hpp"
#include "etgen/template_io.hpp"
#include "etgen/text_format.hpp"
#include "etgen/triangulation.hpp"

namespace etgen {

namespace {

template <class Num>
bool parse_number(std::string_view text, Num& out) {
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return !text.empty() && ec == std::errc{} && ptr == text.data() + text.size();
}

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  std::string s(buf, ptr);
  if (s.find_first_of(".e") == std::string::npos) s += ".0";
  return s;
}

std::size_t builder_arity(Builder b) { return b == Builder::Triangulation3 ? 3 : 6; }

class Reader {
 public:
  explicit Reader(std::string_view doc) : lines_(split_lines(doc)) {}

  bool next() {
    while (index_ < lines_.size()) {
      tokens_ = tokenize(lines_[index_++]);
      if (!tokens_.empty()) return true;
    }
    tokens_.clear();
    return false;
  }
  const std::vector<Token>& tokens() const { return tokens_; }
  std::string_view keyword() const { return tokens_.front().text; }
  std::size_t line() const { return index_; }
  [[noreturn]] void fail(const std::string& msg, std::size_t token = 0) const {
    throw ParseError(msg, line(), token < tokens_.size() ? tokens_[token].column : 0);
  }
  void expect_count(std::size_t n) const {
    if (tokens_.size() != n) fail("expected " + std::to_string(n) + " fields, got " + std::to_string(tokens_.size()));
  }
  template <class Num>
  Num number(std::size_t token) const {
    Num v{};
    if (!parse_number(tokens_.at(token).text, v)) fail("bad number '" + std::string(tokens_.at(token).text) + "'", token);
    return v;
  }

 private:
  std::vector<std::string_view> lines_;
  std::size_t index_ = 0;
  std::vector<Token> tokens_;
};

void check_header(Reader& in, std::string_view magic) {
  if (!in.next() || in.tokens().size() != 2 || in.keyword() != magic) {
    throw ParseError("missing '" + std::string(magic) + "' header", in.line());
  }
  if (in.tokens()[1].text != "1") in.fail("unsupported document version", 1);
}

std::vector<std::string> read_variables(const Reader& in) {
  std::vector<std::string> vars;
  for (std::size_t i = 1; i < in.tokens().size(); ++i) vars.emplace_back(in.tokens()[i].text);
  try {
    validate_variable_names(vars);
  } catch (const ParseError& e) {
    throw ParseError(e.what(), in.line());
  }
  return vars;
}

void sort_terms(std::vector<ProblemTerm>& terms) {
  std::sort(terms.begin(), terms.end(),
            [](const ProblemTerm& a, const ProblemTerm& b) { return GrevlexGreater{}(a.monomial, b.monomial); });
}

}  // namespace

bool Coefficient::is_zero() const {
  switch (kind) {
    case Kind::Integer:
    case Kind::Rational:
      return num == 0;
    case Kind::Real:
      return real == 0.0;
    case Kind::Generic:
      return false;
  }
  return false;
}

double Coefficient::to_double() const {
  switch (kind) {
    case Kind::Integer:
      return static_cast<double>(num);
    case Kind::Rational:
      return static_cast<double>(num) / static_cast<double>(den);
    case Kind::Real:
      return real;
    case Kind::Generic:
      break;
  }
  throw std::logic_error("generic coefficient has no numeric value");
}

Fp Coefficient::to_field(const PrimeField& field) const {
  switch (kind) {
    case Kind::Integer:
      return field.element(num);
    case Kind::Rational:
      return field.rational(num, den);
    case Kind::Real:
      return field.from_double(real);
    case Kind::Generic:
      break;
  }
  throw std::logic_error("generic coefficient needs a sample");
}

Coefficient parse_coefficient(std::string_view text, std::size_t line, std::size_t column) {
  if (text == "?") return Coefficient::generic();
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    std::int64_t n = 0, d = 0;
    if (!parse_number(text.substr(0, slash), n) || !parse_number(text.substr(slash + 1), d)) {
      throw ParseError("bad rational '" + std::string(text) + "'", line, column);
    }
    if (d == 0) throw ParseError("zero denominator", line, column);
    if (d < 0) {
      n = -n;
      d = -d;
    }
    const auto g = std::gcd(n < 0 ? -n : n, d);
    if (g > 1) {
      n /= g;
      d /= g;
    }
    return d == 1 ? Coefficient::integer(n) : Coefficient::rational(n, d);
  }
  if (text.find_first_of(".eEin") != std::string_view::npos) {
    double v = 0.0;
    if (!parse_number(text, v) || !std::isfinite(v)) throw ParseError("bad real '" + std::string(text) + "'", line, column);
    return Coefficient::decimal(v);
  }
  std::int64_t v = 0;
  if (!parse_number(text, v)) throw ParseError("bad coefficient '" + std::string(text) + "'", line, column);
  return Coefficient::integer(v);
}

std::string format_coefficient(const Coefficient& c) {
  switch (c.kind) {
    case Coefficient::Kind::Integer:
      return std::to_string(c.num);
    case Coefficient::Kind::Rational:
      return std::to_string(c.num) + "/" + std::to_string(c.den);
    case Coefficient::Kind::Real:
      return format_double(c.real);
    case Coefficient::Kind::Generic:
      return "?";
  }
  return "?";
}

std::string_view builder_name(Builder b) {
  switch (b) {
    case Builder::Triangulation3:
      return "triangulation3";
    case Builder::H13f20:
      return "h13f-20";
    case Builder::H13f21:
      return "h13f-21";
  }
  return "";
}

ProblemDef parse_problem(std::string_view document) {
  Reader in(document);
  check_header(in, "etgen-problem");
  ProblemDef def;
  bool have_variables = false;
  while (in.next()) {
    const auto key = in.keyword();
    if (key == "name") {
      in.expect_count(2);
      def.name = std::string(in.tokens()[1].text);
    } else if (key == "variables") {
      if (have_variables) in.fail("variables declared twice");
      def.variables = read_variables(in);
      have_variables = true;
    } else if (key == "expected-roots") {
      in.expect_count(2);
      def.expected_roots = in.number<std::size_t>(1);
    } else if (key == "seed") {
      in.expect_count(2);
      def.seed = in.number<std::uint64_t>(1);
    } else if (key == "builder") {
      in.expect_count(2);
      const auto name = in.tokens()[1].text;
      if (name == "triangulation3") def.builder = Builder::Triangulation3;
      else if (name == "h13f-20") def.builder = Builder::H13f20;
      else if (name == "h13f-21") def.builder = Builder::H13f21;
      else in.fail("unknown builder '" + std::string(name) + "'", 1);
    } else if (key == "finder") {
      in.expect_count(2);
      const auto mode = in.tokens()[1].text;
      if (mode == "first") def.finder = FinderMode::FirstHit;
      else if (mode == "best") def.finder = FinderMode::Best;
      else in.fail("finder mode must be 'first' or 'best'", 1);
    } else if (key == "accept") {
      if (in.tokens().size() < 2) in.fail("missing acceptance kind");
      if (in.tokens()[1].text == "median-aggregate") {
        in.expect_count(3);
        def.accept_median_aggregate = in.number<double>(2);
      } else if (in.tokens()[1].text == "placement") {
        in.expect_count(4);
        def.accept_placement_error = in.number<double>(2);
        def.accept_placement_fraction = in.number<double>(3);
      } else {
        in.fail("unknown acceptance kind", 1);
      }
    } else if (key == "poly") {
      if (!have_variables) in.fail("'poly' before 'variables'");
      in.expect_count(1);
      std::vector<ProblemTerm> terms;
      bool closed = false;
      while (in.next()) {
        if (in.keyword() == "end") {
          in.expect_count(1);
          closed = true;
          break;
        }
        in.expect_count(2);
        ProblemTerm t{parse_monomial(in.tokens()[1].text, def.variables, in.line(), in.tokens()[1].column),
                      parse_coefficient(in.tokens()[0].text, in.line(), in.tokens()[0].column)};
        if (t.coeff.is_zero()) in.fail("zero coefficient");
        if (std::any_of(terms.begin(), terms.end(), [&](const ProblemTerm& u) { return u.monomial == t.monomial; })) {
          in.fail("repeated monomial in polynomial", 1);
        }
        terms.push_back(std::move(t));
      }
      if (!closed) throw ParseError("unterminated 'poly' block", in.line());
      if (terms.empty() || (terms.size() == 1 && terms[0].monomial.is_unit())) {
        throw ParseError("constant polynomial", in.line());
      }
      sort_terms(terms);
      def.polys.push_back(std::move(terms));
    } else {
      in.fail("unknown keyword '" + std::string(key) + "'");
    }
  }
  if (!have_variables) throw ParseError("missing 'variables'", in.line());
  if (def.builder) {
    if (!def.polys.empty()) throw ParseError("a builder problem must not list polynomials");
    if (def.arity() != builder_arity(*def.builder)) {
      throw ParseError("builder '" + std::string(builder_name(*def.builder)) + "' needs " +
                       std::to_string(builder_arity(*def.builder)) + " variables");
    }
  } else {
    if (def.polys.empty()) throw ParseError("problem has no polynomials");
    for (std::size_t v = 0; v < def.arity(); ++v) {
      bool used = false;
      for (const auto& f : def.polys)
        for (const auto& t : f) used = used || t.monomial[v] != 0;
      if (!used) throw ParseError("variable '" + def.variables[v] + "' does not occur in any polynomial");
    }
  }
  return def;
}

std::string format_problem(const ProblemDef& def) {
  std::ostringstream out;
  out << "etgen-problem 1\n";
  if (!def.name.empty()) out << "name " << def.name << '\n';
  out << "variables";
  for (const auto& v : def.variables) out << ' ' << v;
  out << '\n';
  if (def.expected_roots) out << "expected-roots " << *def.expected_roots << '\n';
  out << "seed " << def.seed << '\n';
  if (def.builder) out << "builder " << builder_name(*def.builder) << '\n';
  if (def.finder == FinderMode::Best) out << "finder best\n";
  if (def.accept_median_aggregate) out << "accept median-aggregate " << format_double(*def.accept_median_aggregate) << '\n';
  if (def.accept_placement_error) {
    out << "accept placement " << format_double(*def.accept_placement_error) << ' '
        << format_double(def.accept_placement_fraction.value_or(1.0)) << '\n';
  }
  for (const auto& f : def.polys) {
    out << "poly\n";
    for (const auto& t : f) out << "  " << format_coefficient(t.coeff) << ' ' << format_monomial(t.monomial, def.variables) << '\n';
    out << "end\n";
  }
  return out.str();
}

ProblemDef load_problem(const std::filesystem::path& path) { return parse_problem(read_file(path)); }

void save_problem(const std::filesystem::path& path, const ProblemDef& def) { write_file(path, format_problem(def)); }

LaurentSystem<Fp> generic_system(const ProblemDef& def, const PrimeField& field) {
  std::mt19937_64 rng(def.seed);
  std::uniform_int_distribution<std::uint32_t> dist(1, field.modulus() - 1);
  const auto sample = [&] { return Fp(dist(rng), field.modulus()); };
  if (def.builder) {
    if (*def.builder == Builder::Triangulation3) {
      return triangulation_system(random_triangulation_data<Fp>(sample));
    }
    H13fData<Fp> data;
    for (auto& p : data.p) p = {sample(), sample(), Fp(1, field.modulus())};
    for (auto& c : data.q) c = sample();
    for (auto& x : data.x)
      for (auto& c : x) c = sample();
    return h13f_system(data, *def.builder == Builder::H13f20);
  }
  LaurentSystem<Fp> system;
  for (std::size_t j = 0; j < def.polys.size(); ++j) {
    std::vector<Term<Fp>> terms;
    for (const auto& t : def.polys[j]) terms.push_back({t.monomial, t.coeff.is_generic() ? sample() : t.coeff.to_field(field)});
    LaurentPoly<Fp> f(std::move(terms));
    if (f.size() != def.polys[j].size()) {
      throw std::invalid_argument("polynomial " + std::to_string(j) + " has a coefficient that vanishes mod " +
                                  std::to_string(field.modulus()));
    }
    system.push_back(std::move(f));
  }
  return system;
}

bool has_numeric_coefficients(const ProblemDef& def) {
  if (def.builder) return false;
  for (const auto& f : def.polys)
    for (const auto& t : f)
      if (t.coeff.is_generic()) return false;
  return true;
}

LaurentSystem<double> numeric_system(const ProblemDef& def) {
  if (!has_numeric_coefficients(def)) throw std::invalid_argument("problem has generic or builder coefficients");
  LaurentSystem<double> system;
  for (const auto& f : def.polys) {
    std::vector<Term<double>> terms;
    for (const auto& t : f) terms.push_back({t.monomial, t.coeff.to_double()});
    system.emplace_back(std::move(terms));
  }
  return system;
}

std::vector<MonomialSet> problem_structure(const ProblemDef& def) {
  std::vector<MonomialSet> out;
  for (const auto& f : generic_system(def, PrimeField{})) out.push_back(f.support());
  return out;
}

LaurentSystem<double> parse_instance(std::string_view document, std::vector<std::string>* variables) {
  Reader in(document);
  check_header(in, "etgen-instance");
  if (!in.next() || in.keyword() != "variables") throw ParseError("expected 'variables'", in.line());
  const auto vars = read_variables(in);
  if (!in.next() || in.keyword() != "polynomials") throw ParseError("expected 'polynomials'", in.line());
  in.expect_count(2);
  const auto count = in.number<std::size_t>(1);
  if (count == 0) in.fail("instance has no polynomials", 1);
  std::vector<std::vector<Term<double>>> terms(count);
  bool closed = false;
  while (in.next()) {
    if (in.keyword() == "end") {
      in.expect_count(1);
      closed = true;
      break;
    }
    if (in.keyword() != "term") in.fail("expected 'term' or 'end'");
    in.expect_count(4);
    const auto j = in.number<std::size_t>(1);
    if (j >= count) in.fail("polynomial index out of range", 1);
    const Monomial m = parse_monomial(in.tokens()[2].text, vars, in.line(), in.tokens()[2].column);
    const Coefficient c = parse_coefficient(in.tokens()[3].text, in.line(), in.tokens()[3].column);
    if (c.is_generic()) in.fail("instances need numeric coefficients", 3);
    if (std::any_of(terms[j].begin(), terms[j].end(), [&](const Term<double>& t) { return t.monomial == m; })) {
      in.fail("repeated term", 2);
    }
    terms[j].push_back({m, c.to_double()});
  }
  if (!closed) throw ParseError("missing 'end'", in.line());
  if (in.next()) in.fail("trailing content after 'end'");
  LaurentSystem<double> system;
  for (auto& t : terms) system.emplace_back(std::move(t));
  if (variables) *variables = vars;
  return system;
}

std::string format_instance(const LaurentSystem<double>& system, const std::vector<std::string>& variables) {
  std::ostringstream out;
  out << "etgen-instance 1\nvariables";
  for (const auto& v : variables) out << ' ' << v;
  out << "\npolynomials " << system.size() << '\n';
  for (std::size_t j = 0; j < system.size(); ++j)
    for (const auto& t : system[j].terms())
      out << "term " << j << ' ' << format_monomial(t.monomial, variables) << ' ' << format_double(t.coeff) << '\n';
  out << "end\n";
  return out.str();
}

LaurentSystem<double> load_instance(const std::filesystem::path& path, std::vector<std::string>* variables) {
  return parse_instance(read_file(path), variables);
}

}  // namespace etgen
