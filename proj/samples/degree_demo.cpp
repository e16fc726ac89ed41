// Degree of the thirteen-gon triangulation, its quads and a summary of its trees.

#include <cstdio>

#include "xratio/engine.hpp"
#include "xratio/polygon.hpp"
#include "xratio/trees.hpp"

int main() {
  using namespace xratio;
  Triangulation t(13, {{1, 3}, {1, 4}, {1, 10}, {1, 12}, {4, 6}, {4, 9}, {4, 10}, {6, 8}, {6, 9}, {10, 12}});
  auto problem = triangulation_to_problem(t);

  std::printf("quads:");
  for (const auto& q : problem.quads) std::printf(" %s", q.to_string().c_str());
  std::printf("\nengine degree:        %llu\n", static_cast<unsigned long long>(degree(problem)));
  std::printf("closed-form degree:   %llu\n", static_cast<unsigned long long>(closed_formula_degree(t)));

  TreeOptions opt;
  opt.max_labels = 13;
  auto trees = contributing_trees(problem.instance(), opt);
  std::printf("contributing trees:   %zu\n", trees.size());
  return 0;
}
