#pragma once

// Searches for the largest cross-ratio degree C(n) on n labels.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <functional>
#include <mutex>
#include <random>
#include <set>
#include <string>
#include <thread>
#include <unordered_set>
#include <utility>
#include <vector>

#include "xratio/canonical.hpp"
#include "xratio/detail/compact.hpp"
#include "xratio/engine.hpp"
#include "xratio/polygon.hpp"
#include "xratio/surplus.hpp"
#include "xratio/types.hpp"

namespace xratio {

enum class SearchMode { exhaustive, heuristic };

inline std::string to_string(SearchMode m) { return m == SearchMode::exhaustive ? "exhaustive" : "heuristic"; }

struct SearchResult {
  int n = 0;
  std::uint64_t best_degree = 0;
  std::vector<CrossRatioProblem> witnesses;  // canonical forms
  SearchMode mode = SearchMode::exhaustive;
  bool certified = false;
  std::uint64_t evaluations = 0;
  double elapsed_seconds = 0.0;
  std::uint64_t seed = 0;
  std::uint64_t budget = 0;
  std::uint64_t classes = 0;  // exhaustive: isomorphism classes evaluated
};

/// (2^{floor(n/2)-2}, 2^{n-5}).
inline std::pair<std::uint64_t, std::uint64_t> bound_report(int n) {
  if (n < 5) throw ValidationError("bound_report: n must be at least 5");
  if (n - 5 >= 64) throw ValidationError("bound_report: n too large");
  return {std::uint64_t{1} << (n / 2 - 2), std::uint64_t{1} << (n - 5)};
}

inline bool within_bounds(int n, std::uint64_t d) {
  if (n < 6) return true;
  auto [lo, hi] = bound_report(n);
  return lo <= d && d <= hi;
}

namespace detail {

inline CrossRatioProblem problem_from_key(const CanonicalKey& key) {
  CrossRatioProblem p;
  p.n = key.m;
  const auto inst = instance_from_key(key);
  p.quads = inst.quads();
  return p;
}

inline std::vector<Quad> all_quads(int n) {
  std::vector<Quad> out;
  for (int a = 1; a <= n; ++a)
    for (int b = a + 1; b <= n; ++b)
      for (int c = b + 1; c <= n; ++c)
        for (int d = c + 1; d <= n; ++d) out.emplace_back(a, b, c, d);
  return out;
}

class WitnessSet {
 public:
  explicit WitnessSet(std::size_t cap) : cap_(cap) {}

  void offer(std::uint64_t d, const CanonicalKey& key) {
    if (d < best_) return;
    if (d > best_) {
      best_ = d;
      keys_.clear();
    }
    if (keys_.size() < cap_) keys_.insert(key);
  }

  void merge(const WitnessSet& other) {
    for (const auto& k : other.keys_) offer(other.best_, k);
    if (other.best_ > best_) best_ = other.best_;
  }

  std::uint64_t best() const { return best_; }

  std::vector<CrossRatioProblem> problems() const {
    std::vector<CrossRatioProblem> out;
    for (const auto& k : keys_) out.push_back(problem_from_key(k));
    return out;
  }

 private:
  std::size_t cap_;
  std::uint64_t best_ = 0;
  std::set<CanonicalKey> keys_;
};

}  // namespace detail

struct ExhaustiveOptions {
  int cap = 7;
  bool allow_eight = false;
  std::size_t max_witnesses = 64;
  std::size_t cache_cap = 0;
};

/// Certified C(n) by enumerating every quad multiset up to relabeling.
inline SearchResult exhaustive_cn(int n, const ExhaustiveOptions& opt = {}) {
  if (n < 3) throw ValidationError("exhaustive_cn: n must be at least 3");
  const int cap = opt.allow_eight ? std::max(opt.cap, 8) : opt.cap;
  if (n > cap) {
    throw ValidationError("exhaustive_cn: n=" + std::to_string(n) + " exceeds the exhaustive cap of " +
                          std::to_string(cap));
  }
  const auto start = std::chrono::steady_clock::now();
  SearchResult r;
  r.n = n;
  r.mode = SearchMode::exhaustive;
  r.certified = true;
  detail::WitnessSet wit(opt.max_witnesses);
  if (n == 3) {
    r.best_degree = 1;
    r.evaluations = 1;
    r.classes = 1;
    r.witnesses = {CrossRatioProblem{3, {}}};
    return r;
  }
  EngineOptions eo;
  eo.cache_cap = opt.cache_cap;
  DegreeEngine engine(eo);
  const auto quads = detail::all_quads(n);
  const int k = n - 3;
  std::unordered_set<CanonicalKey, CanonicalKeyHash> seen;
  // Every class has a representative containing {1,2,3,4} (quads[0]).
  std::vector<int> idx(static_cast<std::size_t>(k), 0);
  std::vector<Quad> pick(static_cast<std::size_t>(k), quads[0]);
  auto visit = [&] {
    auto inst = DegreeInstance::on_range(n, pick);
    auto c = detail::compact(inst);
    if (detail::surplus_violated(c)) return;
    auto key = detail::canonical_key(c);
    if (!seen.insert(key).second) return;
    ++r.evaluations;
    wit.offer(engine.degree(inst), key);
  };
  // idx[0] fixed at 0; idx[1..k-1] non-decreasing.
  std::function<void(int, int)> rec = [&](int pos, int from) {
    if (pos == k) {
      visit();
      return;
    }
    for (int q = from; q < static_cast<int>(quads.size()); ++q) {
      pick[static_cast<std::size_t>(pos)] = quads[static_cast<std::size_t>(q)];
      rec(pos + 1, q);
    }
  };
  rec(1, 0);
  r.classes = seen.size();
  r.best_degree = wit.best();
  r.witnesses = wit.problems();
  r.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

struct HeuristicOptions {
  std::uint64_t restart_budget = 20000;  // evaluations per restart
  std::uint64_t patience = 1500;         // non-improving proposals before a kick
  std::uint64_t sideways_cap = 300;      // consecutive equal-degree acceptances
  double overlap_bias = 0.75;            // chance a move draws a low-overlap quad
  unsigned threads = 1;
  std::size_t max_witnesses = 16;
  std::size_t cache_cap = 2'000'000;
};

namespace detail {

struct RestartOutcome {
  WitnessSet witnesses{16};
  std::uint64_t evaluations = 0;
};

class LocalSearch {
 public:
  LocalSearch(int n, const HeuristicOptions& opt, DegreeEngine& engine)
      : n_(n), opt_(opt), engine_(engine), quads_(all_quads(n)) {}

  RestartOutcome run(std::uint64_t restart, std::uint64_t seed, std::uint64_t budget) {
    std::mt19937_64 rng(splitmix_stream(seed, restart));
    RestartOutcome out;
    out.witnesses = WitnessSet(opt_.max_witnesses);
    std::vector<Quad> state = start(restart, rng);
    std::uint64_t current = evaluate(state, out);
    std::vector<Quad> local_best = state;
    std::uint64_t local_best_d = current;
    std::uint64_t stale = 0, sideways = 0;
    while (out.evaluations < budget) {
      if (stale >= opt_.patience || sideways >= opt_.sideways_cap) {
        state = local_best;
        kick(state, rng);
        current = evaluate(state, out);
        stale = sideways = 0;
        continue;
      }
      std::uniform_int_distribution<std::size_t> pos(0, state.size() - 1);
      const std::size_t j = pos(rng);
      Quad repl = propose(state, j, rng);
      if (std::find(state.begin(), state.end(), repl) != state.end()) {
        ++stale;
        continue;
      }
      Quad old = state[j];
      state[j] = repl;
      std::uint64_t d = evaluate(state, out);
      if (d > current) {
        current = d;
        stale = sideways = 0;
      } else if (d == current) {
        ++stale;
        ++sideways;
      } else {
        state[j] = old;
        ++stale;
      }
      if (current >= local_best_d) {
        local_best = state;
        local_best_d = current;
      }
    }
    return out;
  }

 private:
  static std::uint64_t splitmix_stream(std::uint64_t seed, std::uint64_t tag) {
    auto mix = [](std::uint64_t x) {
      x += 0x9e3779b97f4a7c15ULL;
      x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
      x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
      return x ^ (x >> 31);
    };
    return mix(mix(seed) ^ (tag * 0xd1b54a32d192ed03ULL));
  }

  std::vector<Quad> start(std::uint64_t restart, std::mt19937_64& rng) const {
    if (restart == 0 && n_ >= 6) return triangulation_to_problem(inscribed_polygon_triangulation(n_)).quads;
    switch (restart % 3) {
      case 1:
        return triangulation_to_problem(random_triangulation(n_, rng())).quads;
      case 2: {
        std::vector<Quad> out;
        while (static_cast<int>(out.size()) < n_ - 3) {
          Quad q = quads_[std::uniform_int_distribution<std::size_t>(0, quads_.size() - 1)(rng)];
          if (std::find(out.begin(), out.end(), q) == out.end()) out.push_back(q);
        }
        return out;
      }
      default:
        if (n_ >= 6) return triangulation_to_problem(inscribed_polygon_triangulation(n_)).quads;
        return triangulation_to_problem(random_triangulation(n_, rng())).quads;
    }
  }

  Quad propose(const std::vector<Quad>& state, std::size_t skip, std::mt19937_64& rng) const {
    std::uniform_int_distribution<std::size_t> any(0, quads_.size() - 1);
    if (std::uniform_real_distribution<double>(0, 1)(rng) < opt_.overlap_bias) {
      for (int attempt = 0; attempt < 24; ++attempt) {
        const Quad& q = quads_[any(rng)];
        bool low = true;
        for (std::size_t i = 0; i < state.size() && low; ++i) {
          if (i == skip) continue;
          int common = 0;
          for (auto l : q) common += state[i].contains(l);
          low = common <= 2;
        }
        if (low) return q;
      }
    }
    return quads_[any(rng)];
  }

  void kick(std::vector<Quad>& state, std::mt19937_64& rng) const {
    const std::size_t moves = 1 + state.size() / 4;
    std::uniform_int_distribution<std::size_t> pos(0, state.size() - 1);
    for (std::size_t k = 0; k < moves; ++k) {
      std::size_t j = pos(rng);
      Quad q = propose(state, j, rng);
      if (std::find(state.begin(), state.end(), q) == state.end()) state[j] = q;
    }
  }

  std::uint64_t evaluate(const std::vector<Quad>& state, RestartOutcome& out) {
    ++out.evaluations;
    auto inst = DegreeInstance::on_range(n_, state);
    auto c = compact(inst);
    if (surplus_violated(c)) return 0;
    std::uint64_t d = engine_.degree(inst);
    if (d >= out.witnesses.best() && d > 0) out.witnesses.offer(d, canonical_key(c));
    return d;
  }

  int n_;
  const HeuristicOptions& opt_;
  DegreeEngine& engine_;
  std::vector<Quad> quads_;
};

}  // namespace detail

/// Seeded multi-restart local search; the result is a lower bound on C(n).
inline SearchResult heuristic_cn(int n, std::uint64_t budget, std::uint64_t seed, const HeuristicOptions& opt = {}) {
  if (n < 6) throw ValidationError("heuristic_cn: n must be at least 6");
  if (n > detail::kMaxLabels) throw ValidationError("heuristic_cn: n exceeds the label limit");
  const auto start = std::chrono::steady_clock::now();
  EngineOptions eo;
  eo.cache_cap = opt.cache_cap;
  DegreeEngine engine(eo);
  const std::uint64_t per = std::max<std::uint64_t>(1, opt.restart_budget);
  const std::uint64_t restarts = std::max<std::uint64_t>(1, (budget + per - 1) / per);
  std::vector<detail::RestartOutcome> outcomes(restarts);
  std::atomic<std::uint64_t> next{0};
  auto work = [&] {
    detail::LocalSearch ls(n, opt, engine);
    for (std::uint64_t r = next++; r < restarts; r = next++) {
      std::uint64_t b = std::min(per, budget > r * per ? budget - r * per : 1);
      outcomes[r] = ls.run(r, seed, b);
    }
  };
  const unsigned workers = static_cast<unsigned>(std::min<std::uint64_t>(std::max(1u, opt.threads), restarts));
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  SearchResult r;
  r.n = n;
  r.mode = SearchMode::heuristic;
  r.certified = false;
  r.seed = seed;
  r.budget = budget;
  detail::WitnessSet merged(opt.max_witnesses);
  for (const auto& o : outcomes) {
    merged.merge(o.witnesses);
    r.evaluations += o.evaluations;
  }
  r.best_degree = merged.best();
  r.witnesses = merged.problems();
  r.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

}  // namespace xratio
