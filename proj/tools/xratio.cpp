// Command-line front end: degree, verify, oracle, search, trees.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "xratio/engine.hpp"
#include "xratio/io.hpp"
#include "xratio/oracle.hpp"
#include "xratio/polygon.hpp"
#include "xratio/search.hpp"
#include "xratio/trees.hpp"

namespace fs = std::filesystem;
using namespace xratio;

namespace {

enum Exit { kOk = 0, kParse = 2, kValidation = 3, kInconclusive = 4, kVerifyFailed = 5 };

struct Common {
  std::uint64_t seed = 20240601;
  unsigned threads = 1;
  std::string format = "json";
  std::size_t cache_cap = 0;
};

std::string fixtures_dir() {
  if (const char* env = std::getenv("XRATIO_FIXTURES"); env && *env) return env;
  return XRATIO_DEFAULT_FIXTURES;
}

// A path as given, else a file of that name (with or without .json) in the fixtures directory.
std::string resolve(const std::string& name) {
  if (fs::exists(name)) return name;
  for (const auto& candidate : {fs::path(fixtures_dir()) / name, fs::path(fixtures_dir()) / (name + ".json")}) {
    if (fs::exists(candidate)) return candidate.string();
  }
  throw ParseError("input not found: " + name + " (fixtures: " + fixtures_dir() + ")");
}

void emit(const Json& report, const std::string& format) {
  if (format == "json") {
    std::cout << report.dump(2) << '\n';
    return;
  }
  std::size_t width = 0;
  for (const auto& [k, v] : report.items()) width = std::max(width, k.size());
  for (const auto& [k, v] : report.items()) {
    std::cout << k << std::string(width - k.size() + 2, ' ') << (v.is_string() ? v.get<std::string>() : v.dump())
              << '\n';
  }
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

int cmd_degree(const Common& c, const std::string& input) {
  auto t0 = std::chrono::steady_clock::now();
  auto in = load_input(read_json_file(resolve(input)));
  EngineOptions eo;
  eo.cache_cap = c.cache_cap;
  DegreeEngine engine(eo);
  std::uint64_t d = engine.degree(in.problem);
  auto st = engine.stats();
  Json report = {{"n", in.problem.n},
                 {"degree", d},
                 {"method", "recursion"},
                 {"cache_hits", st.cache_hits},
                 {"cache_misses", st.cache_misses}};
  if (in.triangulation) {
    report["internal_triangles"] = internal_triangle_count(*in.triangulation);
    report["closed_formula"] = closed_formula_degree(*in.triangulation);
  }
  report["elapsed_seconds"] = seconds_since(t0);
  emit(report, c.format);
  return kOk;
}

int cmd_verify(const Common& c, int nmax) {
  auto t0 = std::chrono::steady_clock::now();
  if (nmax < 3 || nmax > kDefaultEnumerationCap) {
    throw ValidationError("--nmax must lie in 3.." + std::to_string(kDefaultEnumerationCap));
  }
  EngineOptions eo;
  eo.cache_cap = c.cache_cap;
  DegreeEngine engine(eo);
  Json per_n = Json::object();
  std::uint64_t total = 0, mismatches = 0;
  Json first_failure;
  for (int n = 3; n <= nmax; ++n) {
    std::map<int, std::uint64_t> by_internal;
    std::uint64_t count = 0;
    enumerate_triangulations(n, [&](const Triangulation& t) {
      ++count;
      int internal = internal_triangle_count(t);
      ++by_internal[internal];
      if (engine.degree(triangulation_to_problem(t)) != closed_formula_degree(t)) {
        if (mismatches++ == 0) first_failure = to_json(t);
      }
    });
    Json hist = Json::object();
    for (auto [k, v] : by_internal) hist[std::to_string(k)] = v;
    per_n[std::to_string(n)] = {{"triangulations", count}, {"by_internal_triangles", hist}};
    total += count;
  }
  Json report = {{"nmax", nmax}, {"triangulations", total}, {"mismatches", mismatches}, {"per_n", per_n}};
  if (mismatches) report["first_mismatch"] = first_failure;
  report["elapsed_seconds"] = seconds_since(t0);
  emit(report, c.format);
  return mismatches ? kVerifyFailed : kOk;
}

int cmd_oracle(const Common& c, const std::string& input, std::uint64_t paths, std::size_t max_unknowns) {
  auto t0 = std::chrono::steady_clock::now();
  auto in = load_input(read_json_file(resolve(input)));
  OracleOptions opt;
  opt.path_cap = paths;
  opt.max_unknowns = max_unknowns;
  opt.threads = c.threads;
  auto f = numeric_degree(in.problem, c.seed, opt);
  Json report = to_json(f);
  report["n"] = in.problem.n;
  report["seed"] = c.seed;
  int code = f.inconclusive ? kInconclusive : kOk;
  if (in.problem.n <= 16) {
    std::uint64_t d = DegreeEngine().degree(in.problem);
    report["engine_degree"] = d;
    report["agrees"] = static_cast<std::uint64_t>(f.count) == d;
    if (!f.inconclusive && static_cast<std::uint64_t>(f.count) != d) code = kVerifyFailed;
  }
  report["elapsed_seconds"] = seconds_since(t0);
  emit(report, c.format);
  return code;
}

int cmd_search(const Common& c, int n, const std::string& mode, std::uint64_t budget, const std::string& out,
               bool resume, bool allow_eight) {
  const bool exhaustive = mode == "exhaustive" || n < 6;
  const std::string effective = exhaustive ? "exhaustive" : "heuristic";
  const std::uint64_t seed = exhaustive ? 0 : c.seed;
  const std::uint64_t run_budget = exhaustive ? 0 : budget;
  if (resume && !out.empty() && completed_runs(out).count({n, effective, seed, run_budget})) {
    emit(Json{{"n", n}, {"mode", effective}, {"seed", seed}, {"budget", run_budget}, {"skipped", true}}, c.format);
    return kOk;
  }
  SearchResult r;
  if (exhaustive) {
    ExhaustiveOptions opt;
    opt.allow_eight = allow_eight;
    opt.cache_cap = c.cache_cap;
    r = exhaustive_cn(n, opt);
  } else {
    HeuristicOptions opt;
    opt.threads = c.threads;
    if (c.cache_cap) opt.cache_cap = c.cache_cap;
    r = heuristic_cn(n, budget, c.seed, opt);
  }
  Json report = to_json(r);
  report["within_bounds"] = within_bounds(n, r.best_degree);
  if (!out.empty()) append_json_line(out, report);
  emit(report, c.format);
  return within_bounds(n, r.best_degree) ? kOk : kVerifyFailed;
}

int cmd_trees(const Common& c, const std::string& input, std::size_t max_labels, std::size_t max_trees) {
  auto in = load_input(read_json_file(resolve(input)));
  TreeOptions opt;
  opt.max_labels = max_labels;
  opt.max_trees = max_trees;
  Json forest = Json::array();
  contributing_trees(in.problem.instance(), [&](const MarkedTree& t) { forest.push_back(to_json(t)); }, opt);
  Json report = {{"n", in.problem.n}, {"problem", to_json(in.problem)}, {"count", forest.size()}, {"trees", forest}};
  emit(report, c.format);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cross-ratio degrees: exact recursion, numerical oracle and C(n) search"};
  app.require_subcommand(1);
  Common common;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--seed", common.seed, "Random seed")->capture_default_str();
    sub->add_option("--threads", common.threads, "Worker threads")->check(CLI::PositiveNumber)->capture_default_str();
    sub->add_option("--format", common.format, "Output format")->check(CLI::IsMember({"json", "table"}))
        ->capture_default_str();
    sub->add_option("--cache-cap", common.cache_cap, "Memo cache entry cap (0 = unbounded)")->capture_default_str();
  };

  std::string input;
  auto* degree_cmd = app.add_subcommand("degree", "Exact degree of a problem or triangulation file");
  degree_cmd->add_option("input", input, "Problem/triangulation JSON or fixture name")->required();
  add_common(degree_cmd);

  int nmax = 10;
  auto* verify_cmd = app.add_subcommand("verify", "Check d_T = 2^I(T) for every triangulation up to --nmax");
  verify_cmd->add_option("--nmax", nmax, "Largest polygon size")
      ->capture_default_str();
  add_common(verify_cmd);

  std::uint64_t paths = 4096;
  std::size_t max_unknowns = 6;
  auto* oracle_cmd = app.add_subcommand("oracle", "Numerical fiber count by homotopy continuation");
  oracle_cmd->add_option("input", input, "Problem/triangulation JSON or fixture name")->required();
  oracle_cmd->add_option("--paths", paths, "Bezout path cap")->check(CLI::PositiveNumber)->capture_default_str();
  oracle_cmd->add_option("--max-unknowns", max_unknowns, "Unknown count limit")->check(CLI::PositiveNumber)
      ->capture_default_str();
  add_common(oracle_cmd);

  int n = 6;
  std::string mode = "heuristic", out;
  std::uint64_t budget = 100000;
  bool resume = false, allow_eight = false;
  auto* search_cmd = app.add_subcommand("search", "Search for the largest degree C(n)");
  search_cmd->add_option("--n", n, "Number of labels")->check(CLI::Range(3, 32))->required();
  search_cmd->add_option("--mode", mode, "Search mode")->check(CLI::IsMember({"exhaustive", "heuristic"}))
      ->capture_default_str();
  search_cmd->add_option("--budget", budget, "Degree evaluations (heuristic)")->check(CLI::PositiveNumber)
      ->capture_default_str();
  search_cmd->add_option("--out", out, "JSON-lines result file to append to");
  search_cmd->add_flag("--resume", resume, "Skip runs already present in --out");
  search_cmd->add_flag("--allow-eight", allow_eight, "Permit exhaustive search at n = 8");
  add_common(search_cmd);

  std::size_t max_labels = 10, max_trees = 0;
  auto* trees_cmd = app.add_subcommand("trees", "Stream the contributing marked trees as a JSON forest");
  trees_cmd->add_option("input", input, "Problem/triangulation JSON or fixture name")->required();
  trees_cmd->add_option("--max-labels", max_labels, "Label cap")->check(CLI::PositiveNumber)->capture_default_str();
  trees_cmd->add_option("--max-trees", max_trees, "Stop after this many trees (0 = all)")->capture_default_str();
  add_common(trees_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kParse;
  }

  try {
    if (degree_cmd->parsed()) return cmd_degree(common, input);
    if (verify_cmd->parsed()) return cmd_verify(common, nmax);
    if (oracle_cmd->parsed()) return cmd_oracle(common, input, paths, max_unknowns);
    if (search_cmd->parsed()) return cmd_search(common, n, mode, budget, out, resume, allow_eight);
    if (trees_cmd->parsed()) return cmd_trees(common, input, max_labels, max_trees);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kParse;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kValidation;
  }
  return kOk;
}
