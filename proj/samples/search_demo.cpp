// Largest degree over all problems for small n, exact and heuristic.

#include <cstdio>

#include "xratio/engine.hpp"
#include "xratio/search.hpp"

int main() {
  using namespace xratio;
  for (int n = 3; n <= 7; ++n) {
    auto r = exhaustive_cn(n);
    std::printf("n=%d  exhaustive  C=%llu  classes=%llu\n", n, static_cast<unsigned long long>(r.best_degree),
                static_cast<unsigned long long>(r.classes));
  }
  auto r = heuristic_cn(8, 50000, 7);
  auto [lo, hi] = bound_report(8);
  std::printf("n=8  heuristic   best=%llu  bounds [%llu, %llu]\n", static_cast<unsigned long long>(r.best_degree),
              static_cast<unsigned long long>(lo), static_cast<unsigned long long>(hi));
  if (!r.witnesses.empty()) {
    std::printf("witness:");
    for (const auto& q : r.witnesses.front().quads) std::printf(" %s", q.to_string().c_str());
    std::printf("\n");
  }
  return 0;
}
