#include <doctest.h>

#include <algorithm>

#include "etgen/corpus.hpp"
#include "etgen/pipeline.hpp"

using namespace etgen;

TEST_CASE("toy generate, reduce, and bench") {
  const ProblemDef def = parse_problem(find_corpus_entry("toy")->problem);
  const auto found = generate_template(def);
  REQUIRE(found);
  CHECK(found->tmpl.variables == def.variables);
  const auto reduced = reduce_template(def, found->tmpl);
  CHECK(reduced.tmpl.solving_size() <= found->tmpl.solving_size());
  CHECK(reduced.tmpl.row_count() <= found->tmpl.row_count());

  const auto report = run_bench(def, reduced.tmpl, {20, 0, 1});
  REQUIRE(report.trials.size() == 20);
  REQUIRE(report.median_aggregate);
  CHECK(*report.median_aggregate < -8.0);
  CHECK(report.accepted);
  const std::string csv = bench_csv(report);
  CHECK(csv.rfind("trial,aggregate,placement_error,time_ms_online,time_ms_fill\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 21);
}

TEST_CASE("trial instances are deterministic and rescaled") {
  const ProblemDef def = parse_problem(find_corpus_entry("toy")->problem);
  const auto a = trial_instance(def, 4);
  const auto b = trial_instance(def, 4);
  CHECK(a.system == b.system);
  const auto base = numeric_system(def);
  for (std::size_t j = 0; j < base.size(); ++j) {
    const double ratio = a.system[j].terms()[0].coeff / base[j].terms()[0].coeff;
    for (std::size_t t = 0; t < base[j].size(); ++t)
      CHECK(a.system[j].terms()[t].coeff == doctest::Approx(ratio * base[j].terms()[t].coeff));
    CHECK(ratio >= 0.1 - 1e-12);
    CHECK(ratio <= 10.0 + 1e-12);
  }
}

TEST_CASE("templates only apply to the problem they were built for") {
  const ProblemDef toy = parse_problem(find_corpus_entry("toy")->problem);
  const ProblemDef tri = parse_problem(find_corpus_entry("triangulation")->problem);
  const auto found = generate_template(toy);
  REQUIRE(found);
  CHECK_THROWS_AS(reduce_template(tri, found->tmpl), StructureMismatch);
}

TEST_CASE("triangulation trials carry a ground truth") {
  const ProblemDef tri = parse_problem(find_corpus_entry("triangulation")->problem);
  const auto trial = trial_instance(tri, 2);
  REQUIRE(trial.truth);
  CHECK(trial.system.size() == 3);
}
