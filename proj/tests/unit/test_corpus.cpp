#include <doctest.h>

#include <filesystem>

#include "etgen/corpus.hpp"
#include "etgen/problem.hpp"
#include "etgen/template_io.hpp"

using namespace etgen;

TEST_CASE("embedded corpus matches the files on disk") {
  const std::filesystem::path dir = ETGEN_CORPUS_DIR;
  REQUIRE(corpus().size() == 3);
  for (const auto& entry : corpus()) {
    CAPTURE(entry.name);
    CHECK(read_file(dir / (std::string(entry.name) + ".problem")) == entry.problem);
    if (entry.instance) CHECK(read_file(dir / (std::string(entry.name) + ".instance")) == *entry.instance);
    CHECK(parse_problem(entry.problem).name == entry.name);
  }
  CHECK_FALSE(find_corpus_entry("missing"));
}

TEST_CASE("builder problems") {
  const auto tri = parse_problem(find_corpus_entry("triangulation")->problem);
  CHECK(tri.builder == Builder::Triangulation3);
  CHECK(tri.finder == FinderMode::Best);
  CHECK(tri.expected_roots == 47u);
  const auto structure = problem_structure(tri);
  REQUIRE(structure.size() == 3);

  const auto h13f = parse_problem(find_corpus_entry("h13f")->problem);
  CHECK(h13f.builder == Builder::H13f20);
  CHECK(problem_structure(h13f).size() == 20);
  CHECK(generic_system(h13f, PrimeField{}) == generic_system(h13f, PrimeField{}));
}
