#include <doctest.h>

#include <algorithm>
#include <random>

#include "etgen/corpus.hpp"
#include "etgen/problem.hpp"
#include "etgen/template_io.hpp"
#include "etgen/text_format.hpp"
#include "support/invariants.hpp"
#include "support/toy_fixture.hpp"

using namespace etgen;
using namespace etgen::testing;

TEST_CASE("template serialization round trips byte for byte (1000 cases)") {
  const auto outcome = serialization_property(1000, 404);
  INFO(outcome.first_failure);
  CHECK(outcome.cases == 1000);
  CHECK(outcome.ok());
}

TEST_CASE("malformed template documents are rejected") {
  const Toy toy = make_toy();
  const auto t = template_test(toy.shifted, unit_shifts(3, 2), toy.action);
  REQUIRE(t);
  const std::string good = serialize_template(*t);
  CHECK(deserialize_template(good) == *t);

  auto replaced = [&](const std::string& from, const std::string& to) {
    std::string s = good;
    const auto at = s.find(from);
    return at == std::string::npos ? std::string("missing ") + from : s.replace(at, from.size(), to);
  };
  auto replaced_line = [&](const std::string& keyword, const std::string& line) {
    std::string s = good;
    const auto at = s.find("\n" + keyword + " ");
    if (at == std::string::npos) return "missing " + keyword;
    return s.replace(at + 1, s.find('\n', at + 1) - at - 1, line);
  };
  CHECK_THROWS_AS(deserialize_template(""), ParseError);
  CHECK_THROWS_AS(deserialize_template(replaced("etgen-template 1", "etgen-template 2")), ParseError);
  CHECK_THROWS_AS(deserialize_template(replaced("prime 65521", "prime 65535")), ParseError);
  CHECK_THROWS_AS(deserialize_template(replaced_line("action", "action 1")), ParseError);
  CHECK_THROWS_AS(deserialize_template(replaced("end", "end\nextra")), ParseError);
  CHECK_THROWS_AS(deserialize_template(replaced_line("block", "block 1 1")), ParseError);
  CHECK_THROWS_AS(deserialize_template(replaced_line("variables", "variables x x")), ParseError);
  CHECK_THROWS_AS(deserialize_template(good.substr(0, good.size() / 2)), ParseError);
  CHECK(replaced_line("action", "action 1") != good);
}

TEST_CASE("monomial text") {
  const std::vector<std::string> vars{"x", "y"};
  CHECK(parse_monomial("x^2*y^-1", vars) == Monomial{2, -1});
  CHECK(parse_monomial("x*x*y", vars) == Monomial{2, 1});
  CHECK(parse_monomial("1", vars) == Monomial{0, 0});
  CHECK(format_monomial(Monomial{-1, 2}, vars) == "x^-1*y^2");
  CHECK(format_monomial(Monomial{0, 0}, vars) == "1");
  CHECK_THROWS_AS(parse_monomial("z", vars), ParseError);
  CHECK_THROWS_AS(parse_monomial("x^", vars), ParseError);
  CHECK_THROWS_AS(parse_monomial("x^a", vars), ParseError);
  CHECK_THROWS_AS(validate_variable_names(std::vector<std::string>{"x", "x"}), ParseError);
  CHECK_THROWS_AS(validate_variable_names(std::vector<std::string>{"2x"}), ParseError);
}

TEST_CASE("coefficient text") {
  CHECK(parse_coefficient("-7") == Coefficient::integer(-7));
  CHECK(parse_coefficient("3/4") == Coefficient::rational(3, 4));
  CHECK(parse_coefficient("?").is_generic());
  CHECK(parse_coefficient("2.5").to_double() == 2.5);
  CHECK(format_coefficient(Coefficient::decimal(2.0)).find_first_of(".e") != std::string::npos);
  CHECK_THROWS_AS(parse_coefficient("1/0"), ParseError);
  CHECK_THROWS_AS(parse_coefficient("abc"), ParseError);
  CHECK_THROWS_AS(Coefficient::generic().to_double(), std::logic_error);
}

TEST_CASE("the toy problem document") {
  const ProblemDef def = parse_problem(find_corpus_entry("toy")->problem);
  CHECK(def.name == "toy");
  CHECK(def.variables == std::vector<std::string>{"x", "y"});
  CHECK(def.expected_roots == 3u);
  REQUIRE(def.polys.size() == 2);
  CHECK(problem_structure(def)[0] == MonomialSet{{1, 0}, {0, 1}, {-1, 2}, {0, 0}});
  CHECK(has_numeric_coefficients(def));
  CHECK(parse_problem(format_problem(def)) == def);

  const auto real = numeric_system(def);
  const std::vector<double> root{-1.0, 2.0};
  for (const auto& f : real) CHECK(evaluate(f, std::span<const double>(root)) == doctest::Approx(0.0));
}

TEST_CASE("problem parse errors carry line numbers") {
  const std::string doc = "etgen-problem 1\nvariables x y\npoly\n  1 x\n  2 q\nend\n";
  try {
    parse_problem(doc);
    FAIL("no exception");
  } catch (const ParseError& e) {
    CHECK(e.line() == 5);
  }
  CHECK_THROWS_AS(parse_problem("etgen-problem 1\nvariables x\n"), ParseError);
  CHECK_THROWS_AS(parse_problem("etgen-problem 9\n"), ParseError);
}

TEST_CASE("problem documents survive save and load (1000 cases)") {
  std::mt19937_64 rng(505);
  std::uniform_int_distribution<int> small(1, 3), coeff(-50, 50), kind(0, 3);
  for (int c = 0; c < 1000; ++c) {
    ProblemDef def;
    def.name = "case" + std::to_string(c);
    const int k = small(rng);
    for (int i = 0; i < k; ++i) def.variables.push_back("v" + std::to_string(i));
    for (int j = small(rng); j > 0; --j) {
      std::vector<ProblemTerm> terms;
      MonomialSet used;
      for (int t = small(rng) + 1; t > 0; --t) {
        const Monomial m = random_monomial(rng, static_cast<std::size_t>(k), 2);
        if (used.contains(m)) continue;
        used.insert(m);
        Coefficient co;
        switch (kind(rng)) {
          case 0: co = Coefficient::integer(coeff(rng) | 1); break;
          case 1: co = Coefficient::rational(coeff(rng) | 1, 7); break;
          case 2: co = Coefficient::decimal(coeff(rng) / 8.0 + 0.0625); break;
          default: co = Coefficient::generic();
        }
        terms.push_back({m, co});
      }
      const Monomial v0 = Monomial::variable(static_cast<std::size_t>(k), 0);
      if (std::all_of(terms.begin(), terms.end(), [](const ProblemTerm& t) { return t.monomial.is_unit(); })) {
        terms.push_back({v0, Coefficient::integer(3)});
        used.insert(v0);
      }
      if (def.polys.empty())
        for (int i = 0; i < k; ++i) {
          const Monomial v = Monomial::variable(static_cast<std::size_t>(k), static_cast<std::size_t>(i));
          if (!used.contains(v)) terms.push_back({v, Coefficient::integer(i + 1)});
        }
      def.polys.push_back(std::move(terms));
    }
    if (c % 2) def.expected_roots = static_cast<std::size_t>(small(rng));
    if (c % 3 == 0) def.finder = FinderMode::Best;
    if (c % 5 == 0) def.accept_median_aggregate = -6.5;
    def.seed = static_cast<std::uint64_t>(c);
    // Parsing puts terms in canonical order; from then on text is stable.
    const ProblemDef back = parse_problem(format_problem(def));
    const std::string text = format_problem(back);
    REQUIRE(parse_problem(text) == back);
    REQUIRE(format_problem(parse_problem(text)) == text);
    REQUIRE(problem_structure(back) == problem_structure(def));
    REQUIRE(back.variables == def.variables);
    REQUIRE(back.expected_roots == def.expected_roots);
    REQUIRE(back.finder == def.finder);
  }
}

TEST_CASE("instance documents round trip") {
  const Toy toy = make_toy();
  const std::vector<std::string> vars{"x", "y"};
  const std::string text = format_instance(toy.real, vars);
  std::vector<std::string> parsed_vars;
  CHECK(parse_instance(text, &parsed_vars) == toy.real);
  CHECK(parsed_vars == vars);
  CHECK(parse_instance(*find_corpus_entry("toy")->instance) == toy.real);
  CHECK_THROWS_AS(parse_instance("etgen-instance 1\nvariables x\npolynomials 1\nterm 1 x 1.0\nend\n"), ParseError);
}
