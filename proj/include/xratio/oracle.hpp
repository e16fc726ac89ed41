#pragma once

// Numerical fiber counting. The cross-ratio equations are written in a chart
// sending three labels to (inf, 0, 1), denominators are cleared, and the
// square system is solved by a total-degree homotopy tracked on a random
// affine patch of projective space.

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "xratio/types.hpp"

namespace xratio {

using Complex = std::complex<double>;

/// A point of the Riemann sphere.
struct ExtendedPoint {
  Complex z{};
  bool infinite = false;

  static ExtendedPoint at_infinity() { return {Complex{}, true}; }
  ExtendedPoint() = default;
  ExtendedPoint(Complex v) : z(v) {}  // NOLINT(google-explicit-constructor)
  ExtendedPoint(double v) : z(v) {}   // NOLINT(google-explicit-constructor)

 private:
  ExtendedPoint(Complex v, bool inf) : z(v), infinite(inf) {}
};

/// ((a-c)(b-d)) / ((a-d)(b-c)); factors involving the point at infinity drop out.
inline Complex cross_ratio(ExtendedPoint a, ExtendedPoint b, ExtendedPoint c, ExtendedPoint d) {
  const std::array<ExtendedPoint, 4> p{a, b, c, d};
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      bool same = p[i].infinite ? p[j].infinite : (!p[j].infinite && p[i].z == p[j].z);
      if (same) throw ValidationError("cross_ratio: coincident points");
    }
  }
  auto diff = [&](int i, int j) { return (p[i].infinite || p[j].infinite) ? Complex{1.0} : p[i].z - p[j].z; };
  return diff(0, 2) * diff(1, 3) / (diff(0, 3) * diff(1, 2));
}

/// Labels sent to infinity, 0 and 1.
struct Chart {
  std::array<int, 3> fixed{1, 2, 3};

  void validate(int n) const {
    for (int k = 0; k < 3; ++k) {
      if (fixed[k] < 1 || fixed[k] > n) throw ValidationError("chart label outside 1..n");
      for (int j = 0; j < k; ++j) {
        if (fixed[j] == fixed[k]) throw ValidationError("chart labels must be distinct");
      }
    }
  }
};

struct Target {
  std::array<int, 4> tuple{};  // ordered labels of the quad
  Complex lambda{};
};

namespace detail {

inline std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t stream(std::uint64_t seed, std::uint64_t tag) { return splitmix(splitmix(seed) ^ tag); }

inline Complex random_unit(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::acos(-1.0));
  return std::polar(1.0, angle(rng));
}

}  // namespace detail

/// Uniform on the annulus 0.5 <= |z| <= 1.5 with the disk |z - 1| < margin removed.
inline Complex random_target_value(std::mt19937_64& rng, double margin = 0.1) {
  std::uniform_real_distribution<double> r2(0.25, 2.25);
  while (true) {
    Complex z = std::polar(std::sqrt(r2(rng)), std::arg(detail::random_unit(rng)));
    if (std::abs(z - 1.0) >= margin) return z;
  }
}

inline std::vector<Target> random_targets(const CrossRatioProblem& p, std::mt19937_64& rng, double margin = 0.1) {
  std::vector<Target> out;
  for (const auto& q : p.quads) {
    out.push_back({{q[0].value(), q[1].value(), q[2].value(), q[3].value()}, random_target_value(rng, margin)});
  }
  return out;
}

inline Chart random_chart(int n, std::mt19937_64& rng) {
  std::vector<int> labels(n);
  std::iota(labels.begin(), labels.end(), 1);
  std::shuffle(labels.begin(), labels.end(), rng);
  return Chart{{labels[0], labels[1], labels[2]}};
}

/// Homogeneous linear form c_0 y_0 + c_1 y_1 + ... ; y_0 is the homogenizing coordinate.
using LinearForm = std::vector<Complex>;

struct Equation {
  Target target;
  std::vector<LinearForm> numerator, denominator;  // equal lengths
  int degree() const { return static_cast<int>(numerator.size()); }
};

/// Square system: prod(numerator) - lambda * prod(denominator) = 0 for each quad.
struct PolynomialSystem {
  int n = 0;
  Chart chart;
  std::vector<int> unknown_labels;  // label of unknown x_1, x_2, ...
  std::vector<Equation> equations;

  std::size_t unknowns() const { return unknown_labels.size(); }

  std::uint64_t bezout() const {
    std::uint64_t b = 1;
    for (const auto& e : equations) b *= static_cast<std::uint64_t>(e.degree());
    return b;
  }

  std::string to_string() const {
    auto form = [&](const LinearForm& f) {
      std::ostringstream os;
      os << "(";
      bool first = true;
      for (std::size_t k = 0; k < f.size(); ++k) {
        if (f[k] == Complex{}) continue;
        double re = f[k].real();
        os << (first ? (re < 0 ? "-" : "") : (re < 0 ? " - " : " + "));
        if (std::abs(re) != 1.0 || k == 0) os << std::abs(re);
        if (k > 0) os << "p" << unknown_labels[k - 1];
        first = false;
      }
      os << ")";
      return os.str();
    };
    std::ostringstream os;
    for (const auto& e : equations) {
      for (const auto& f : e.numerator) os << form(f);
      os << " - lambda";
      for (const auto& f : e.denominator) os << form(f);
      os << " = 0\n";
    }
    return os.str();
  }
};

inline PolynomialSystem build_system(const CrossRatioProblem& problem, const std::vector<Target>& targets,
                                     const Chart& chart) {
  problem.validate();
  chart.validate(problem.n);
  if (targets.size() != problem.quads.size()) throw ValidationError("build_system: one target per quad required");
  PolynomialSystem sys;
  sys.n = problem.n;
  sys.chart = chart;
  std::map<int, int> slot;  // label -> unknown index (1-based)
  for (int l = 1; l <= problem.n; ++l) {
    if (std::find(chart.fixed.begin(), chart.fixed.end(), l) == chart.fixed.end()) {
      sys.unknown_labels.push_back(l);
      slot[l] = static_cast<int>(sys.unknown_labels.size());
    }
  }
  const std::size_t width = sys.unknown_labels.size() + 1;
  auto point = [&](int label) -> std::optional<LinearForm> {
    LinearForm f(width);
    if (label == chart.fixed[0]) return std::nullopt;
    if (label == chart.fixed[2]) f[0] = 1.0;
    if (auto it = slot.find(label); it != slot.end()) f[it->second] = 1.0;
    return f;
  };
  for (std::size_t j = 0; j < targets.size(); ++j) {
    const Target& t = targets[j];
    std::array<int, 4> sorted = t.tuple;
    std::sort(sorted.begin(), sorted.end());
    const Quad& q = problem.quads[j];
    if (std::array<int, 4>{q[0].value(), q[1].value(), q[2].value(), q[3].value()} != sorted) {
      throw ValidationError("build_system: target tuple does not match quad " + q.to_string());
    }
    std::array<std::optional<LinearForm>, 4> p;
    for (int k = 0; k < 4; ++k) p[k] = point(t.tuple[k]);
    Equation eq;
    eq.target = t;
    auto push = [&](std::vector<LinearForm>& side, int a, int b) {
      if (!p[a] || !p[b]) return;
      LinearForm f(width);
      for (std::size_t k = 0; k < width; ++k) f[k] = (*p[a])[k] - (*p[b])[k];
      side.push_back(std::move(f));
    };
    push(eq.numerator, 0, 2);
    push(eq.numerator, 1, 3);
    push(eq.denominator, 0, 3);
    push(eq.denominator, 1, 2);
    sys.equations.push_back(std::move(eq));
  }
  return sys;
}

struct TrackerOptions {
  std::uint64_t seed = 1;
  std::uint64_t path_cap = 4096;
  unsigned threads = 0;  // 0: hardware concurrency
  double min_step = 1e-14;
  double max_step = 0.05;
  std::size_t max_steps = 200000;
};

enum class PathStatus { converged, singular, diverged, failed };

struct PathResult {
  PathStatus status = PathStatus::failed;
  std::vector<Complex> x;       // affine endpoint (empty when at infinity)
  double infinity_ratio = 0.0;  // |y_0| / max |y_i| at the endpoint
  double residual = 0.0;        // scaled residual of the cleared equations
  double condition = 0.0;       // 2-norm condition number of the Jacobian
  double t_reached = 0.0;
  std::size_t steps = 0;
};

struct SolveReport {
  std::vector<PathResult> paths;
  std::uint64_t bezout = 0;
};

namespace detail {

using VecC = Eigen::VectorXcd;
using MatC = Eigen::MatrixXcd;

inline Complex apply(const LinearForm& f, const VecC& y) {
  Complex s{};
  for (std::size_t k = 0; k < f.size(); ++k) s += f[k] * y[static_cast<Eigen::Index>(k)];
  return s;
}

// Value and gradient of a product of linear forms.
inline Complex product(const std::vector<LinearForm>& fs, const VecC& y, VecC* grad) {
  const std::size_t k = fs.size();
  std::vector<Complex> v(k);
  for (std::size_t i = 0; i < k; ++i) v[i] = apply(fs[i], y);
  Complex all{1.0};
  for (auto c : v) all *= c;
  if (grad) {
    grad->setZero(y.size());
    for (std::size_t i = 0; i < k; ++i) {
      Complex others{1.0};
      for (std::size_t j = 0; j < k; ++j) {
        if (j != i) others *= v[j];
      }
      for (std::size_t c = 0; c < fs[i].size(); ++c) (*grad)[static_cast<Eigen::Index>(c)] += others * fs[i][c];
    }
  }
  return all;
}

class Tracker {
 public:
  Tracker(const PolynomialSystem& sys, const TrackerOptions& opt) : sys_(sys), opt_(opt), dim_(sys.unknowns() + 1) {
    std::mt19937_64 rng(stream(opt.seed, 0x7472616b));
    gamma_ = random_unit(rng);
    patch_ = VecC(dim_);
    for (Eigen::Index k = 0; k < dim_; ++k) patch_[k] = random_unit(rng);
    start_c_.resize(sys.equations.size());
    for (auto& c : start_c_) c = random_unit(rng);
  }

  std::uint64_t bezout() const { return sys_.bezout(); }

  PathResult track(std::uint64_t index) const {
    VecC y = start_point(index);
    PathResult out;
    double t = 0.0, h = 0.01;
    int streak = 0;
    VecC dy(dim_);
    while (t < 1.0 && out.steps < opt_.max_steps) {
      ++out.steps;
      const double step = std::min(h, 1.0 - t);
      // Euler predictor: dy/dt = -H_y^{-1} H_t
      MatC jac;
      VecC ht;
      eval_h(y, t, nullptr, &jac, &ht);
      Eigen::PartialPivLU<MatC> lu(jac);
      VecC guess = y - step * lu.solve(ht);
      const double t1 = t + step;
      bool ok = correct(guess, t1, 3, 1e-9);
      if (ok) {
        y = guess;
        t = t1;
        if (++streak >= 3) {
          h = std::min(h * 2.0, opt_.max_step);
          streak = 0;
        }
      } else {
        h *= 0.5;
        streak = 0;
        if (h < opt_.min_step) break;
      }
    }
    out.t_reached = t;
    finish(y, out);
    return out;
  }

 private:
  VecC start_point(std::uint64_t index) const {
    VecC y(dim_);
    y[0] = 1.0;
    const double tau = 2.0 * std::acos(-1.0);
    for (std::size_t i = 0; i < sys_.equations.size(); ++i) {
      const int d = sys_.equations[i].degree();
      const std::uint64_t root = index % static_cast<std::uint64_t>(d);
      index /= static_cast<std::uint64_t>(d);
      Complex r = std::pow(start_c_[i], 1.0 / d) * std::polar(1.0, tau * static_cast<double>(root) / d);
      y[static_cast<Eigen::Index>(i + 1)] = r;
    }
    return y / (patch_.transpose() * y)(0);
  }

  // H(y,t) = (1-t) gamma G(y) + t F(y), plus the patch equation.
  void eval_h(const VecC& y, double t, VecC* value, MatC* jac, VecC* ht) const {
    const Eigen::Index n = static_cast<Eigen::Index>(sys_.equations.size());
    if (value) value->resize(dim_);
    if (jac) jac->setZero(dim_, dim_);
    if (ht) ht->setZero(dim_);
    VecC gn(dim_), gd(dim_);
    for (Eigen::Index i = 0; i < n; ++i) {
      const Equation& e = sys_.equations[static_cast<std::size_t>(i)];
      const int d = e.degree();
      Complex fn = product(e.numerator, y, jac ? &gn : nullptr);
      Complex fd = product(e.denominator, y, jac ? &gd : nullptr);
      Complex f = fn - e.target.lambda * fd;
      Complex yi = std::pow(y[i + 1], d), y0 = std::pow(y[0], d);
      Complex g = yi - start_c_[static_cast<std::size_t>(i)] * y0;
      if (value) (*value)[i] = (1.0 - t) * gamma_ * g + t * f;
      if (ht) (*ht)[i] = f - gamma_ * g;
      if (jac) {
        VecC row = t * (gn - e.target.lambda * gd);
        row[i + 1] += (1.0 - t) * gamma_ * static_cast<double>(d) * std::pow(y[i + 1], d - 1);
        row[0] -= (1.0 - t) * gamma_ * start_c_[static_cast<std::size_t>(i)] * static_cast<double>(d) *
                  std::pow(y[0], d - 1);
        jac->row(i) = row.transpose();
      }
    }
    if (value) (*value)[n] = (patch_.transpose() * y)(0) - 1.0;
    if (jac) jac->row(n) = patch_.transpose();
  }

  bool correct(VecC& y, double t, int iterations, double tol) const {
    for (int it = 0; it < iterations; ++it) {
      VecC v;
      MatC jac;
      eval_h(y, t, &v, &jac, nullptr);
      VecC delta = Eigen::PartialPivLU<MatC>(jac).solve(-v);
      if (!delta.allFinite()) return false;
      y += delta;
      if (delta.norm() < tol * (1.0 + y.norm())) return true;
    }
    return false;
  }

  void finish(VecC y, PathResult& out) const {
    bool converged = out.t_reached >= 1.0 && correct(y, 1.0, 12, 1e-13);
    const double top = y.cwiseAbs().maxCoeff();
    out.infinity_ratio = top > 0 ? std::abs(y[0]) / top : 0.0;
    if (out.infinity_ratio < 1e-6) {
      out.status = PathStatus::diverged;
      return;
    }
    const std::size_t n = sys_.unknowns();
    out.x.resize(n);
    for (std::size_t k = 0; k < n; ++k) out.x[k] = y[static_cast<Eigen::Index>(k + 1)] / y[0];

    // affine Jacobian and scaled residual at y_0 = 1
    VecC ya(dim_);
    ya[0] = 1.0;
    for (std::size_t k = 0; k < n; ++k) ya[static_cast<Eigen::Index>(k + 1)] = out.x[k];
    MatC ja(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    double res = 0.0;
    VecC gn, gd;
    for (std::size_t i = 0; i < sys_.equations.size(); ++i) {
      const Equation& e = sys_.equations[i];
      Complex fn = product(e.numerator, ya, &gn), fd = product(e.denominator, ya, &gd);
      Complex lfd = e.target.lambda * fd;
      res = std::max(res, std::abs(fn - lfd) / (1.0 + std::abs(fn) + std::abs(lfd)));
      VecC row = gn - e.target.lambda * gd;
      ja.row(static_cast<Eigen::Index>(i)) = row.tail(static_cast<Eigen::Index>(n)).transpose();
    }
    out.residual = res;
    if (n > 0) {
      Eigen::JacobiSVD<MatC> svd(ja);
      const auto& s = svd.singularValues();
      out.condition = s[s.size() - 1] > 0 ? s[0] / s[s.size() - 1] : std::numeric_limits<double>::infinity();
    } else {
      out.condition = 1.0;
    }
    const bool regular = converged && out.residual < 1e-10 && out.condition < 1e10;
    if (regular) {
      out.status = PathStatus::converged;
    } else if (out.t_reached > 0.99) {
      out.status = out.infinity_ratio < 1e-3 ? PathStatus::diverged : PathStatus::singular;
    } else {
      out.status = PathStatus::failed;
    }
  }

  const PolynomialSystem& sys_;
  TrackerOptions opt_;
  Eigen::Index dim_;
  Complex gamma_;
  VecC patch_;
  std::vector<Complex> start_c_;
};

}  // namespace detail

/// Tracks every start path of the total-degree homotopy.
inline SolveReport solve_total_degree(const PolynomialSystem& sys, const TrackerOptions& opt = {}) {
  SolveReport report;
  report.bezout = sys.bezout();
  if (report.bezout > opt.path_cap) {
    throw ValidationError("solve_total_degree: " + std::to_string(report.bezout) + " paths exceed the cap of " +
                          std::to_string(opt.path_cap));
  }
  if (sys.unknowns() == 0) {
    PathResult trivial;
    trivial.status = PathStatus::converged;
    trivial.condition = 1.0;
    trivial.t_reached = 1.0;
    trivial.infinity_ratio = 1.0;
    report.paths.push_back(trivial);
    return report;
  }
  detail::Tracker tracker(sys, opt);
  report.paths.resize(report.bezout);
  unsigned workers = opt.threads ? opt.threads : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, report.bezout));
  std::atomic<std::uint64_t> next{0};
  auto work = [&] {
    for (std::uint64_t i = next++; i < report.bezout; i = next++) report.paths[i] = tracker.track(i);
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  return report;
}

struct OracleOptions {
  std::size_t max_unknowns = 6;
  std::uint64_t path_cap = 4096;
  int trials = 3;
  double margin = 0.1;
  unsigned threads = 0;
  std::optional<Chart> chart;               // fixed chart instead of a random one
  std::optional<std::uint64_t> chart_seed;  // separate stream for the random chart
  double failure_tolerance = 0.05;          // fraction of failed paths allowed
};

struct TrialDetail {
  int count = 0;
  std::size_t failed = 0, diverged = 0, spurious = 0, duplicates = 0;
  double max_residual = 0.0;  // uncleared cross-ratio residual over accepted endpoints
  double max_condition = 0.0;
  double min_separation = std::numeric_limits<double>::infinity();
  std::vector<std::vector<Complex>> solutions;
};

struct FiberCount {
  int count = 0;
  std::vector<int> trials;
  std::size_t paths_tracked = 0, paths_failed = 0, paths_diverged = 0, paths_spurious = 0;
  double min_pairwise_separation = std::numeric_limits<double>::infinity();
  double max_condition = 0.0;
  double max_residual = 0.0;
  bool inconclusive = false;
  std::string note;
  Chart chart;
  std::vector<TrialDetail> detail;
};

namespace detail {

inline double scaled_gap(Complex a, Complex b) {
  return std::abs(a - b) / (1.0 + std::max(std::abs(a), std::abs(b)));
}

// Smallest scaled distance between a coordinate and 0, 1 or another coordinate.
inline double locus_distance(const std::vector<Complex>& x) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < x.size(); ++i) {
    best = std::min({best, scaled_gap(x[i], 0.0), scaled_gap(x[i], 1.0)});
    for (std::size_t j = i + 1; j < x.size(); ++j) best = std::min(best, scaled_gap(x[i], x[j]));
  }
  return best;
}

inline double uncleared_residual(const PolynomialSystem& sys, const std::vector<Complex>& x) {
  std::map<int, ExtendedPoint> at;
  at[sys.chart.fixed[0]] = ExtendedPoint::at_infinity();
  at[sys.chart.fixed[1]] = ExtendedPoint(0.0);
  at[sys.chart.fixed[2]] = ExtendedPoint(1.0);
  for (std::size_t k = 0; k < x.size(); ++k) at[sys.unknown_labels[k]] = ExtendedPoint(x[k]);
  double worst = 0.0;
  for (const auto& e : sys.equations) {
    const auto& t = e.target.tuple;
    Complex cr = cross_ratio(at[t[0]], at[t[1]], at[t[2]], at[t[3]]);
    worst = std::max(worst, std::abs(cr - e.target.lambda) / (1.0 + std::abs(e.target.lambda)));
  }
  return worst;
}

inline TrialDetail classify(const PolynomialSystem& sys, const SolveReport& report) {
  TrialDetail d;
  for (const auto& p : report.paths) {
    switch (p.status) {
      case PathStatus::diverged:
        ++d.diverged;
        continue;
      case PathStatus::failed:
        ++d.failed;
        continue;
      case PathStatus::singular:
        // Singular endpoints are never points of a reduced fiber; only those
        // close to the excluded locus are explained.
        if (locus_distance(p.x) < 1e-3) {
          ++d.spurious;
        } else {
          ++d.failed;
        }
        continue;
      case PathStatus::converged:
        break;
    }
    if (locus_distance(p.x) < 1e-8) {
      ++d.spurious;
      continue;
    }
    bool dup = false;
    for (const auto& s : d.solutions) {
      double gap = 0.0;
      for (std::size_t k = 0; k < s.size(); ++k) gap = std::max(gap, scaled_gap(s[k], p.x[k]));
      d.min_separation = std::min(d.min_separation, gap);
      if (gap < 1e-8) dup = true;
    }
    if (dup) {
      ++d.duplicates;
      continue;
    }
    d.max_residual = std::max(d.max_residual, uncleared_residual(sys, p.x));
    d.max_condition = std::max(d.max_condition, p.condition);
    d.solutions.push_back(p.x);
  }
  d.count = static_cast<int>(d.solutions.size());
  return d;
}

}  // namespace detail

/// Counts the generic fiber of the cross-ratio map numerically.
inline FiberCount numeric_degree(const CrossRatioProblem& problem, std::uint64_t seed, const OracleOptions& opt = {}) {
  problem.validate();
  const std::size_t unknowns = problem.n >= 3 ? static_cast<std::size_t>(problem.n - 3) : 0;
  if (unknowns > opt.max_unknowns) {
    throw ValidationError("numeric_degree: " + std::to_string(unknowns) + " unknowns exceed the limit of " +
                          std::to_string(opt.max_unknowns));
  }
  FiberCount out;
  if (opt.chart) {
    out.chart = *opt.chart;
  } else {
    std::mt19937_64 chart_rng(detail::stream(opt.chart_seed.value_or(seed), 0x6368617274));
    out.chart = random_chart(problem.n, chart_rng);
  }
  std::mt19937_64 target_rng(detail::stream(seed, 0x746172676574));
  for (int trial = 0; trial < opt.trials; ++trial) {
    auto targets = random_targets(problem, target_rng, opt.margin);
    auto sys = build_system(problem, targets, out.chart);
    TrackerOptions topt;
    topt.seed = detail::stream(seed, 1000 + static_cast<std::uint64_t>(trial));
    topt.path_cap = opt.path_cap;
    topt.threads = opt.threads;
    auto report = solve_total_degree(sys, topt);
    auto d = detail::classify(sys, report);
    out.paths_tracked += report.paths.size();
    out.paths_failed += d.failed;
    out.paths_diverged += d.diverged;
    out.paths_spurious += d.spurious;
    out.max_residual = std::max(out.max_residual, d.max_residual);
    out.max_condition = std::max(out.max_condition, d.max_condition);
    out.min_pairwise_separation = std::min(out.min_pairwise_separation, d.min_separation);
    out.trials.push_back(d.count);
    if (static_cast<double>(d.failed) > opt.failure_tolerance * static_cast<double>(report.paths.size())) {
      out.inconclusive = true;
      out.note += "trial " + std::to_string(trial) + ": " + std::to_string(d.failed) + " failed paths; ";
    }
    if (d.duplicates) {
      out.inconclusive = true;
      out.note += "trial " + std::to_string(trial) + ": repeated endpoint; ";
    }
    out.detail.push_back(std::move(d));
  }
  std::map<int, int> votes;
  for (int c : out.trials) ++votes[c];
  auto best = std::max_element(votes.begin(), votes.end(), [](auto& a, auto& b) { return a.second < b.second; });
  out.count = best->first;
  if (best->second * 2 <= opt.trials) {
    out.inconclusive = true;
    out.note += "no majority among trials; ";
  } else if (votes.size() > 1) {
    out.inconclusive = true;
    out.note += "trials disagree; ";
  }
  if (out.max_residual > 1e-8) {
    out.inconclusive = true;
    out.note += "accepted endpoint with large residual; ";
  }
  return out;
}

}  // namespace xratio
