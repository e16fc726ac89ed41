#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace xratio {

/// Raised when an input object breaks one of its structural invariants
/// (wrong quad count, crossing diagonals, repeated labels, ...).
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A point label. Either one of the original labels 1..n or a synthetic
/// attachment mark created while splitting an instance.
class Label {
 public:
  constexpr Label() = default;

  static constexpr Label original(std::int32_t value) { return Label(value); }
  static constexpr Label mark(std::int32_t id) { return Label(-id - 1); }

  constexpr bool is_mark() const { return raw_ < 0; }
  constexpr std::int32_t value() const { return is_mark() ? -raw_ - 1 : raw_; }
  constexpr std::int32_t raw() const { return raw_; }

  std::string to_string() const {
    return is_mark() ? "*" + std::to_string(value()) : std::to_string(raw_);
  }

  friend constexpr auto operator<=>(Label, Label) = default;

 private:
  constexpr explicit Label(std::int32_t raw) : raw_(raw) {}
  std::int32_t raw_ = 0;
};

/// Unordered 4-element set of labels, stored sorted.
class Quad {
 public:
  Quad() = default;
  Quad(Label a, Label b, Label c, Label d) : labels_{a, b, c, d} {
    std::sort(labels_.begin(), labels_.end());
    for (int i = 0; i < 3; ++i) {
      if (labels_[i] == labels_[i + 1]) {
        throw ValidationError("quad has repeated label " + labels_[i].to_string());
      }
    }
  }
  Quad(std::int32_t a, std::int32_t b, std::int32_t c, std::int32_t d)
      : Quad(Label::original(a), Label::original(b), Label::original(c), Label::original(d)) {}

  const std::array<Label, 4>& labels() const { return labels_; }
  Label operator[](std::size_t i) const { return labels_[i]; }
  auto begin() const { return labels_.begin(); }
  auto end() const { return labels_.end(); }

  bool contains(Label l) const {
    return std::binary_search(labels_.begin(), labels_.end(), l);
  }

  std::string to_string() const {
    std::string s = "{";
    for (int i = 0; i < 4; ++i) s += (i ? "," : "") + labels_[i].to_string();
    return s + "}";
  }

  friend auto operator<=>(const Quad&, const Quad&) = default;

 private:
  std::array<Label, 4> labels_{};
};

/// A finite label set with a multiset of |labels|-3 quads on it.
class DegreeInstance {
 public:
  DegreeInstance() = default;
  DegreeInstance(std::vector<Label> labels, std::vector<Quad> quads)
      : labels_(std::move(labels)), quads_(std::move(quads)) {
    std::sort(labels_.begin(), labels_.end());
    if (std::adjacent_find(labels_.begin(), labels_.end()) != labels_.end()) {
      throw ValidationError("instance has repeated labels");
    }
    if (labels_.size() < 3) {
      throw ValidationError("instance needs at least 3 labels");
    }
    if (quads_.size() + 3 != labels_.size()) {
      throw ValidationError("instance on " + std::to_string(labels_.size()) +
                            " labels needs " + std::to_string(labels_.size() - 3) +
                            " quads, got " + std::to_string(quads_.size()));
    }
    for (const Quad& q : quads_) {
      for (Label l : q) {
        if (!std::binary_search(labels_.begin(), labels_.end(), l)) {
          throw ValidationError("quad " + q.to_string() + " uses label outside the instance");
        }
      }
    }
  }

  /// Labels 1..n with the given quads.
  static DegreeInstance on_range(int n, std::vector<Quad> quads) {
    std::vector<Label> labels;
    labels.reserve(n > 0 ? n : 0);
    for (int i = 1; i <= n; ++i) labels.push_back(Label::original(i));
    return DegreeInstance(std::move(labels), std::move(quads));
  }

  const std::vector<Label>& labels() const { return labels_; }
  const std::vector<Quad>& quads() const { return quads_; }
  std::size_t size() const { return labels_.size(); }

  std::size_t index_of(Label l) const {
    auto it = std::lower_bound(labels_.begin(), labels_.end(), l);
    return static_cast<std::size_t>(it - labels_.begin());
  }

 private:
  std::vector<Label> labels_;
  std::vector<Quad> quads_;
};

/// The data (n, U) of a cross-ratio degree problem on labels 1..n.
struct CrossRatioProblem {
  int n = 3;
  std::vector<Quad> quads;

  DegreeInstance instance() const { return DegreeInstance::on_range(n, quads); }

  void validate() const {
    if (n < 3) throw ValidationError("n must be at least 3");
    for (const Quad& q : quads) {
      for (Label l : q) {
        if (l.is_mark() || l.value() < 1 || l.value() > n) {
          throw ValidationError("quad " + q.to_string() + " has label outside 1.." +
                                std::to_string(n));
        }
      }
    }
    if (static_cast<int>(quads.size()) != n - 3) {
      throw ValidationError("problem on " + std::to_string(n) + " labels needs " +
                            std::to_string(n - 3) + " quads, got " +
                            std::to_string(quads.size()));
    }
  }

  friend bool operator==(const CrossRatioProblem&, const CrossRatioProblem&) = default;
};

}  // namespace xratio
