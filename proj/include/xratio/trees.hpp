#pragma once

// Full expansion of the boundary recursion into trivalent marked trees.
// Each split of a vertex along a quad S creates one internal edge whose two
// half-edges carry a fresh pair of synthetic marks; S is recorded on that
// edge. Expansion stops when every vertex has exactly three half-edges.

#include <algorithm>
#include <array>
#include <functional>
#include <string>
#include <vector>

#include "xratio/detail/compact.hpp"
#include "xratio/detail/partition.hpp"
#include "xratio/engine.hpp"
#include "xratio/types.hpp"

namespace xratio {

struct MarkedTree {
  struct Edge {
    std::size_t a = 0, b = 0;  // vertex indices
    Label at_a, at_b;          // synthetic half-edge labels on each end
  };
  /// Half-edge labels around each vertex: instance labels (leaves) and marks.
  std::vector<std::vector<Label>> vertices;
  std::vector<Edge> edges;
  /// quad_edge[j] = internal edge on which quad j was split.
  std::vector<std::size_t> quad_edge;
};

struct TreeOptions {
  std::size_t max_labels = 10;
  std::size_t max_trees = 0;  // 0 = no limit
};

namespace detail {

class TreeExpander {
 public:
  TreeExpander(const DegreeInstance& inst, const TreeOptions& opt, const std::function<void(const MarkedTree&)>& emit)
      : inst_(inst), opt_(opt), emit_(emit) {
    for (auto l : inst.labels()) {
      if (l.is_mark()) next_mark_ = std::max(next_mark_, l.value() + 1);
    }
  }

  std::size_t run() {
    if (inst_.size() > opt_.max_labels) {
      throw ValidationError("contributing_trees: instance has " + std::to_string(inst_.size()) +
                            " labels, cap is " + std::to_string(opt_.max_labels));
    }
    if (engine_.degree(inst_) == 0) return 0;
    State s;
    s.tree.vertices.push_back(inst_.labels());
    s.tree.quad_edge.assign(inst_.quads().size(), 0);
    Node root;
    for (std::size_t j = 0; j < inst_.quads().size(); ++j) root.quads.push_back({inst_.quads()[j], j});
    s.nodes.push_back(std::move(root));
    expand(s);
    return emitted_;
  }

 private:
  struct TaggedQuad {
    Quad quad;
    std::size_t original;
  };
  struct Node {
    std::vector<TaggedQuad> quads;  // renamed quads carried by the vertex
  };
  struct State {
    MarkedTree tree;
    std::vector<Node> nodes;  // parallel to tree.vertices
  };

  bool done() const { return opt_.max_trees && emitted_ >= opt_.max_trees; }

  static DegreeInstance local(const std::vector<Label>& labels, const Node& node) {
    std::vector<Quad> qs;
    for (const auto& t : node.quads) qs.push_back(t.quad);
    return DegreeInstance(labels, std::move(qs));
  }

  void expand(State& s) {
    if (done()) return;
    std::size_t v = 0;
    while (v < s.tree.vertices.size() && s.tree.vertices[v].size() < 4) ++v;
    if (v == s.tree.vertices.size()) {
      ++emitted_;
      emit_(s.tree);
      return;
    }
    const auto labels = s.tree.vertices[v];
    const Node node = s.nodes[v];
    const auto inst = local(labels, node);
    const Compact c = compact(inst);
    PartitionEnumerator en(c, 0, 0);
    const Mask all = full_mask(c.m);
    for (Mask a1 : en.collect()) {
      const Mask a2 = all & ~a1;
      const Label star = Label::mark(next_mark_), dagger = Label::mark(next_mark_ + 1);
      std::vector<Label> left, right;
      for (int k = 0; k < c.m; ++k) ((a1 & bit(k)) ? left : right).push_back(inst.labels()[k]);
      left.push_back(star);
      right.push_back(dagger);
      Node ln, rn;
      auto rename = [&](const Quad& q, Mask away, Label mark) {
        std::array<Label, 4> out{};
        for (int k = 0; k < 4; ++k) {
          out[k] = (away & bit(inst.index_of(q[k]))) ? mark : q[k];
        }
        return Quad(out[0], out[1], out[2], out[3]);
      };
      for (int q : en.side_quads(a1, true)) ln.quads.push_back({rename(node.quads[q].quad, a2, star), node.quads[q].original});
      for (int q : en.side_quads(a1, false)) rn.quads.push_back({rename(node.quads[q].quad, a1, dagger), node.quads[q].original});
      if (engine_.degree(local(left, ln)) == 0 || engine_.degree(local(right, rn)) == 0) continue;

      State next = s;
      const std::size_t w = next.tree.vertices.size();
      next.tree.vertices[v] = left;
      next.nodes[v] = std::move(ln);
      next.tree.vertices.push_back(right);
      next.nodes.push_back(std::move(rn));
      for (auto& e : next.tree.edges) {
        if (e.a == v && !(a1 & bit(inst.index_of(e.at_a)))) e.a = w;
        if (e.b == v && !(a1 & bit(inst.index_of(e.at_b)))) e.b = w;
      }
      next.tree.quad_edge[node.quads[0].original] = next.tree.edges.size();
      next.tree.edges.push_back({v, w, star, dagger});
      next_mark_ += 2;
      expand(next);
      if (done()) return;
    }
  }

  const DegreeInstance& inst_;
  TreeOptions opt_;
  const std::function<void(const MarkedTree&)>& emit_;
  DegreeEngine engine_;
  int next_mark_ = 0;
  std::size_t emitted_ = 0;
};

}  // namespace detail

/// Streams every contributing trivalent tree; returns how many were emitted.
/// The count equals degree(inst) unless `max_trees` cuts the stream short.
inline std::size_t contributing_trees(const DegreeInstance& inst, const std::function<void(const MarkedTree&)>& emit,
                                      TreeOptions options = {}) {
  return detail::TreeExpander(inst, options, emit).run();
}

inline std::vector<MarkedTree> contributing_trees(const DegreeInstance& inst, TreeOptions options = {}) {
  std::vector<MarkedTree> out;
  contributing_trees(inst, [&](const MarkedTree& t) { out.push_back(t); }, options);
  return out;
}

}  // namespace xratio
