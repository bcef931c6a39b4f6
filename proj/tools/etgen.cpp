#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "etgen/corpus.hpp"
#include "etgen/numeric_solver.hpp"
#include "etgen/pipeline.hpp"
#include "etgen/planted_suite.hpp"
#include "etgen/problem.hpp"
#include "etgen/template_io.hpp"
#include "etgen/text_format.hpp"

namespace fs = std::filesystem;
using namespace etgen;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitSolver = 1;
constexpr int kExitUsage = 2;

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void require_file(const std::string& path) {
  if (!fs::is_regular_file(path)) throw InputError("no such file: " + path);
}

// Bare names such as `toy` refer to the bundled corpus; anything with a
// directory or extension is a path.
ProblemDef resolve_problem(const std::string& arg) {
  const fs::path path(arg);
  const bool bare = !path.has_parent_path() && !path.has_extension();
  if (const auto entry = find_corpus_entry(arg); entry && bare) return parse_problem(entry->problem);
  if (fs::is_regular_file(path)) return load_problem(path);
  throw InputError("'" + arg + "' is neither a problem file nor a corpus entry");
}

std::string describe(const Template& t) {
  std::ostringstream out;
  out << t.row_count() << "x" << t.column_count() << " template, #B = " << t.solving_size() << ", action "
      << format_monomial(t.action, t.variables);
  return out.str();
}

std::string format_roots(const RootSet& roots, const std::vector<std::string>& variables) {
  std::ostringstream out;
  out << std::setprecision(17);
  out << "etgen-roots 1\n";
  out << "variables";
  for (const auto& v : variables) out << ' ' << v;
  out << '\n';
  if (roots.aggregate) out << "aggregate " << *roots.aggregate << '\n';
  auto write = [&](const char* keyword, const Root& r) {
    out << keyword << " lambda " << r.eigenvalue.real() << ' ' << r.eigenvalue.imag() << " eps " << r.residual;
    if (r.point.size() == 0) {
      out << " non-toric\n";
      return;
    }
    for (Eigen::Index i = 0; i < r.point.size(); ++i)
      out << ' ' << variables[static_cast<std::size_t>(i)] << ' ' << r.point(i).real() << ' ' << r.point(i).imag();
    out << '\n';
  };
  out << "roots " << roots.roots.size() << '\n';
  for (const auto& r : roots.roots) write("root", r);
  out << "rejected " << roots.rejected.size() << '\n';
  for (const auto& r : roots.rejected) write("candidate", r);
  out << "end\n";
  return out.str();
}

struct GenerateArgs {
  std::string problem;
  std::string output;
  int iterations = 10;
  std::string mode;
  std::uint32_t prime = PrimeField::kDefaultPrime;
};

int run_generate(const GenerateArgs& args) {
  const ProblemDef def = resolve_problem(args.problem);
  GenerateOptions options;
  options.max_iterations = args.iterations;
  options.prime = args.prime;
  if (args.mode == "first") options.mode = FinderMode::FirstHit;
  if (args.mode == "best") options.mode = FinderMode::Best;
  const auto found = generate_template(def, options);
  if (!found) {
    std::cerr << "etgen: no template within " << args.iterations << " iterations\n";
    return kExitSolver;
  }
  save_template(args.output, found->tmpl);
  std::cerr << "generated " << describe(found->tmpl) << " at iteration " << found->iteration << '\n';
  return kExitOk;
}

struct ReduceArgs {
  std::string tmpl;
  std::string problem;
  std::string output;
};

int run_reduce(const ReduceArgs& args) {
  require_file(args.tmpl);
  const Template found = load_template(args.tmpl);
  const ProblemDef def = resolve_problem(args.problem);
  const auto reduced = reduce_template(def, found);
  save_template(args.output, reduced.tmpl);
  std::size_t accepted = 0;
  for (const auto& step : reduced.audit) accepted += step.accepted ? 1 : 0;
  std::cerr << "reduced " << describe(found) << " to " << describe(reduced.tmpl) << " (" << accepted << " of "
            << reduced.audit.size() << " deletions accepted)\n";
  return kExitOk;
}

struct SolveArgs {
  std::string tmpl;
  std::string instance;
  bool complex = false;
  double tolerance = 1e-6;
  std::size_t d0 = 0;
};

int run_solve(const SolveArgs& args) {
  require_file(args.tmpl);
  require_file(args.instance);
  const Template t = load_template(args.tmpl);
  std::vector<std::string> variables;
  const auto system = load_instance(args.instance, &variables);
  if (variables != t.variables) throw StructureMismatch("instance variables differ from the template's");
  SolveOptions options;
  options.include_complex = args.complex;
  options.residual_tolerance = args.tolerance;
  options.d0 = args.d0;
  std::cout << format_roots(solve(t, system, options), variables);
  return kExitOk;
}

struct VerifyArgs {
  std::uint64_t seeds = 100;
  std::uint64_t first = 0;
  int iterations = 10;
};

int run_verify(const VerifyArgs& args) {
  std::size_t found = 0, vanishing = 0, spectrum = 0, identity = 0, monotone = 0;
  for (std::uint64_t s = args.first; s < args.first + args.seeds; ++s) {
    const auto r = run_planted_case(s, planted_parameters(s), args.iterations);
    if (!r.found) {
      std::cout << "seed " << s << ": no template (k = " << r.params.arity << ", d = " << r.params.roots << ")\n";
      continue;
    }
    ++found;
    vanishing += r.vanishing;
    spectrum += r.spectrum;
    identity += r.identity;
    monotone += r.monotone;
    if (!r.passed()) std::cout << "seed " << s << ": check failed\n";
  }
  const auto ratio = [&](std::size_t n) { return std::to_string(n) + "/" + std::to_string(found); };
  std::cout << "templates found " << found << "/" << args.seeds << '\n'
            << "vanishing checks " << ratio(vanishing) << '\n'
            << "spectrum checks " << ratio(spectrum) << '\n'
            << "size identity " << ratio(identity) << '\n'
            << "reduction audit " << ratio(monotone) << '\n';
  const bool checks = vanishing == found && spectrum == found && identity == found && monotone == found;
  const bool rate = 100 * found >= 95 * args.seeds;
  return checks && rate ? kExitOk : kExitSolver;
}

struct BenchArgs {
  std::string problem;
  std::string tmpl;
  std::string csv;
  std::size_t trials = 100;
  std::uint64_t first = 0;
  unsigned threads = 0;
};

int run_bench_command(const BenchArgs& args) {
  const ProblemDef def = resolve_problem(args.problem);
  Template t;
  if (!args.tmpl.empty()) {
    require_file(args.tmpl);
    t = load_template(args.tmpl);
  } else {
    const auto found = generate_template(def);
    if (!found) {
      std::cerr << "etgen: no template for " << args.problem << '\n';
      return kExitSolver;
    }
    t = reduce_template(def, found->tmpl).tmpl;
  }
  std::cerr << "bench " << (def.name.empty() ? args.problem : def.name) << ": " << describe(t) << '\n';
  const auto report = run_bench(def, t, {args.trials, args.first, args.threads});
  if (!args.csv.empty()) write_file(args.csv, bench_csv(report));
  else std::cout << bench_csv(report);

  std::size_t failed = 0;
  std::vector<double> online;
  for (const auto& tr : report.trials) {
    if (!tr.failure.empty()) ++failed;
    else online.push_back(tr.online_ms);
  }
  std::sort(online.begin(), online.end());
  std::cerr << "trials " << report.trials.size() << ", solver failures " << failed;
  if (!online.empty()) std::cerr << ", median online " << online[online.size() / 2] << " ms";
  std::cerr << '\n';
  if (report.median_aggregate) std::cerr << "median aggregate " << *report.median_aggregate << '\n';
  for (const auto& v : report.verdicts) std::cerr << v << '\n';
  return report.accepted ? kExitOk : kExitSolver;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Elimination template generator and solver for Laurent polynomial systems"};
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "Find and prune an elimination template for a problem");
  generate->add_option("problem", gen.problem, "Problem file or corpus entry")->required();
  generate->add_option("-N,--iterations", gen.iterations, "Finder iteration bound")->check(CLI::PositiveNumber);
  generate->add_option("--mode", gen.mode, "Finder mode")->check(CLI::IsMember({"first", "best"}));
  generate->add_option("-p,--prime", gen.prime, "Prime modulus for the generic instance");
  generate->add_option("-o,--output", gen.output, "Template file to write")->required();

  ReduceArgs red;
  auto* reduce = app.add_subcommand("reduce", "Greedily drop shifts from a template");
  reduce->add_option("template", red.tmpl, "Template file")->required();
  reduce->add_option("problem", red.problem, "Problem file or corpus entry")->required();
  reduce->add_option("-o,--output", red.output, "Template file to write")->required();

  SolveArgs sol;
  auto* solve_cmd = app.add_subcommand("solve", "Solve one instance with a template");
  solve_cmd->add_option("template", sol.tmpl, "Template file")->required();
  solve_cmd->add_option("instance", sol.instance, "Instance file")->required();
  solve_cmd->add_flag("--complex", sol.complex, "Keep non-real roots");
  solve_cmd->add_option("--tolerance", sol.tolerance, "Residual filter bound");
  solve_cmd->add_option("--d0", sol.d0, "Residuals in the aggregate error (0: all)");

  VerifyArgs ver;
  auto* verify = app.add_subcommand("verify", "Run the planted-root checks over GF(p)");
  verify->add_option("--seeds", ver.seeds, "Number of seeds");
  verify->add_option("--first", ver.first, "First seed");
  verify->add_option("-N,--iterations", ver.iterations, "Finder iteration bound")->check(CLI::PositiveNumber);

  BenchArgs ben;
  auto* bench = app.add_subcommand("bench", "Generate, reduce, and solve many instances of a problem");
  bench->add_option("problem", ben.problem, "Problem file or corpus entry")->required();
  bench->add_option("--trials", ben.trials, "Number of trials");
  bench->add_option("--first", ben.first, "First trial seed");
  bench->add_option("--template", ben.tmpl, "Use this template instead of generating one");
  bench->add_option("--threads", ben.threads, "Worker threads (0: all cores)");
  bench->add_option("-o,--output", ben.csv, "CSV file to write instead of standard output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*generate) return run_generate(gen);
    if (*reduce) return run_reduce(red);
    if (*solve_cmd) return run_solve(sol);
    if (*verify) return run_verify(ver);
    if (*bench) return run_bench_command(ben);
  } catch (const ParseError& e) {
    std::cerr << "etgen: parse error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const InputError& e) {
    std::cerr << "etgen: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "etgen: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DegenerateInstance& e) {
    std::cerr << "etgen: degenerate instance: " << e.what() << '\n';
    return kExitSolver;
  } catch (const std::exception& e) {
    std::cerr << "etgen: " << e.what() << '\n';
    return kExitSolver;
  }
  return kExitUsage;
}
