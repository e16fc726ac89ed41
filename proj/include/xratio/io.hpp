#pragma once

// JSON encodings for problems, triangulations and reports.

#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "json.hpp"
#include "xratio/oracle.hpp"
#include "xratio/polygon.hpp"
#include "xratio/search.hpp"
#include "xratio/trees.hpp"
#include "xratio/types.hpp"

namespace xratio {

using Json = nlohmann::json;

/// Malformed input text or a JSON document of the wrong shape.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
}

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_json(buf.str());
}

namespace detail {

inline int json_int(const Json& j, const char* what) {
  if (!j.is_number_integer()) throw ParseError(std::string(what) + " must be an integer");
  return j.get<int>();
}

inline const Json& json_field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

inline std::vector<int> json_int_list(const Json& j, const char* what) {
  if (!j.is_array()) throw ParseError(std::string(what) + " must be an array");
  std::vector<int> out;
  for (const auto& v : j) out.push_back(json_int(v, what));
  return out;
}

}  // namespace detail

inline CrossRatioProblem problem_from_json(const Json& j) {
  CrossRatioProblem p;
  p.n = detail::json_int(detail::json_field(j, "n"), "n");
  const Json& qs = detail::json_field(j, "quads");
  if (!qs.is_array()) throw ParseError("quads must be an array");
  for (const auto& q : qs) {
    auto v = detail::json_int_list(q, "quad");
    if (v.size() != 4) throw ValidationError("each quad needs exactly 4 labels");
    p.quads.emplace_back(v[0], v[1], v[2], v[3]);
  }
  p.validate();
  return p;
}

inline Json to_json(const CrossRatioProblem& p) {
  Json qs = Json::array();
  for (const auto& q : p.quads) qs.push_back({q[0].value(), q[1].value(), q[2].value(), q[3].value()});
  return {{"n", p.n}, {"quads", qs}};
}

inline Triangulation triangulation_from_json(const Json& j) {
  const int n = detail::json_int(detail::json_field(j, "n"), "n");
  const Json& ds = detail::json_field(j, "diagonals");
  if (!ds.is_array()) throw ParseError("diagonals must be an array");
  std::vector<Diagonal> diags;
  for (const auto& d : ds) {
    auto v = detail::json_int_list(d, "diagonal");
    if (v.size() != 2) throw ValidationError("each diagonal needs exactly 2 vertices");
    diags.emplace_back(v[0], v[1]);
  }
  return Triangulation(n, diags);
}

inline Json to_json(const Triangulation& t) {
  Json ds = Json::array();
  for (const auto& d : t.diagonals()) ds.push_back({d.u(), d.v()});
  return {{"n", t.n()}, {"diagonals", ds}};
}

/// Either document shape: a problem, or a triangulation converted to its problem.
struct LoadedInput {
  CrossRatioProblem problem;
  std::optional<Triangulation> triangulation;
};

inline LoadedInput load_input(const Json& j) {
  if (j.is_object() && j.contains("diagonals")) {
    auto t = triangulation_from_json(j);
    return {triangulation_to_problem(t), t};
  }
  return {problem_from_json(j), std::nullopt};
}

inline Json to_json(const FiberCount& f) {
  Json j = {{"count", f.count},
            {"trials", f.trials},
            {"paths_tracked", f.paths_tracked},
            {"paths_failed", f.paths_failed},
            {"paths_diverged", f.paths_diverged},
            {"paths_spurious", f.paths_spurious},
            {"inconclusive", f.inconclusive},
            {"chart", f.chart.fixed},
            {"max_residual", f.max_residual},
            {"max_condition", f.max_condition}};
  j["min_pairwise_separation"] = std::isfinite(f.min_pairwise_separation) ? Json(f.min_pairwise_separation) : Json();
  if (!f.note.empty()) j["note"] = f.note;
  return j;
}

inline Json to_json(const SearchResult& r) {
  Json ws = Json::array();
  for (const auto& w : r.witnesses) ws.push_back(to_json(w));
  Json j = {{"n", r.n},
            {"best_degree", r.best_degree},
            {"mode", to_string(r.mode)},
            {"certified", r.certified},
            {"evaluations", r.evaluations},
            {"elapsed_seconds", r.elapsed_seconds},
            {"seed", r.seed},
            {"budget", r.budget},
            {"witnesses", ws}};
  if (r.mode == SearchMode::exhaustive) j["classes"] = r.classes;
  if (r.n >= 5) {
    auto [lo, hi] = bound_report(r.n);
    j["bounds"] = {lo, hi};
  }
  return j;
}

inline Json to_json(const MarkedTree& t) {
  auto label = [](Label l) { return l.is_mark() ? Json("*" + std::to_string(l.value())) : Json(l.value()); };
  Json vs = Json::array();
  for (std::size_t v = 0; v < t.vertices.size(); ++v) {
    Json hs = Json::array();
    for (auto l : t.vertices[v]) hs.push_back(label(l));
    vs.push_back({{"id", v}, {"half_edges", hs}});
  }
  Json es = Json::array();
  for (const auto& e : t.edges) es.push_back({{"a", e.a}, {"b", e.b}, {"at_a", label(e.at_a)}, {"at_b", label(e.at_b)}});
  return {{"vertices", vs}, {"edges", es}, {"quad_edge", t.quad_edge}};
}

/// Appends one compact JSON document as a line.
inline void append_json_line(const std::string& path, const Json& j) {
  std::ofstream out(path, std::ios::app);
  if (!out) throw ParseError("cannot write " + path);
  out << j.dump() << '\n';
}

using RunKey = std::tuple<int, std::string, std::uint64_t, std::uint64_t>;  // n, mode, seed, budget

/// Runs already recorded in a JSON-lines result file; a missing file yields none.
inline std::set<RunKey> completed_runs(const std::string& path) {
  std::set<RunKey> out;
  std::ifstream in(path);
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.empty()) continue;
    Json j = parse_json(line);
    try {
      out.emplace(j.at("n").get<int>(), j.at("mode").get<std::string>(), j.at("seed").get<std::uint64_t>(),
                  j.at("budget").get<std::uint64_t>());
    } catch (const Json::exception& e) {
      throw ParseError(path + ":" + std::to_string(number) + ": " + e.what());
    }
  }
  return out;
}

}  // namespace xratio
