#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "cdawg/level_ancestor.hpp"
#include "cdawg/op_counter.hpp"
#include "cdawg/text.hpp"

namespace cdawg {

/// Acyclic graph with ordered out-lists. Nodes without children are leaves
/// and carry a symbol. Every internal node must have at least two children.
///
/// tau links each internal node to its first child; its roots are the
/// leaves. wsum[v] is the edge-weight total along the tau path from v to its
/// leaf, and size[v] the number of leaves in the parse tree of v.
struct OrderedDag {
  std::vector<std::uint32_t> child_begin{0};
  std::vector<std::uint32_t> child;
  std::vector<std::uint64_t> weight;  // parallel to child; may be empty
  std::vector<symbol_t> label;        // per node, meaningful on leaves

  std::vector<std::uint64_t> size;
  std::vector<std::uint64_t> wsum;
  std::vector<std::uint32_t> height;  // edges on the longest downward path
  LevelAncestor tau;

  std::uint32_t node_count() const { return static_cast<std::uint32_t>(label.size()); }
  bool is_leaf(std::uint32_t v) const { return child_begin[v] == child_begin[v + 1]; }
  std::uint32_t degree(std::uint32_t v) const { return child_begin[v + 1] - child_begin[v]; }
  std::span<const std::uint32_t> children_of(std::uint32_t v) const {
    return std::span<const std::uint32_t>(child).subspan(child_begin[v], degree(v));
  }
  bool weighted() const { return !weight.empty(); }
  std::uint64_t edge_weight(std::uint32_t e) const { return weight.empty() ? 0 : weight[e]; }

  std::uint32_t add_leaf(symbol_t c) {
    label.push_back(c);
    child_begin.push_back(child_begin.back());
    return node_count() - 1;
  }
  std::uint32_t add_node(std::span<const std::uint32_t> kids,
                         std::span<const std::uint64_t> weights = {}) {
    if (kids.size() < 2) throw std::logic_error("internal node needs two children");
    child.insert(child.end(), kids.begin(), kids.end());
    if (!weights.empty()) weight.insert(weight.end(), weights.begin(), weights.end());
    label.push_back(0);
    child_begin.push_back(static_cast<std::uint32_t>(child.size()));
    return node_count() - 1;
  }

  /// Computes size, wsum, height and tau. Children must precede parents in
  /// id order unless `order` gives a bottom-up order explicitly.
  void finalize(std::span<const std::uint32_t> order = {}) {
    const std::uint32_t n = node_count();
    if (!weight.empty() && weight.size() != child.size()) {
      throw std::logic_error("weights must cover every edge");
    }
    std::vector<std::uint32_t> seq;
    if (order.empty()) {
      seq.resize(n);
      for (std::uint32_t v = 0; v < n; ++v) seq[v] = v;
      order = seq;
    }
    size.assign(n, 0);
    wsum.assign(n, 0);
    height.assign(n, 0);
    std::vector<std::uint32_t> parent(n, kNone);
    for (std::uint32_t v : order) {
      if (is_leaf(v)) {
        size[v] = 1;
        continue;
      }
      const std::uint32_t first = child[child_begin[v]];
      parent[v] = first;
      wsum[v] = edge_weight(child_begin[v]) + wsum[first];
      for (std::uint32_t e = child_begin[v]; e < child_begin[v + 1]; ++e) {
        size[v] += size[child[e]];
        height[v] = std::max(height[v], height[child[e]] + 1);
      }
    }
    tau.build(parent);
  }

  /// Leaf reached by following first children from v.
  std::uint32_t leftmost_leaf(std::uint32_t v) const { return tau.query(v, 0); }
};

/// One step of a cursor: the leaf reached and the weight of the path that
/// led to it.
struct PathItem {
  symbol_t symbol = 0;
  std::uint64_t weight = 0;
};

/// Left-to-right enumeration of the leaves below a DAG node, in constant
/// work per leaf.
///
/// A frame stands for a node `top` whose leftmost leaf has already been
/// produced. `cur` is the tau ancestor of that leaf at `level`, the node whose
/// children are being walked, and `next` is the next child index. A frame
/// whose work is done is removed before its last child is entered, so every
/// frame on the stack has produced at least one leaf and still owns one.
class PathCursor {
 public:
  PathCursor() = default;
  PathCursor(const OrderedDag& g, std::uint32_t v, std::uint64_t start_weight = 0,
             OpCounter* ops = nullptr)
      : g_(&g), ops_(ops), root_(v), start_(start_weight) {}

  std::optional<PathItem> next() {
    if (!g_) return std::nullopt;
    if (!started_) {
      started_ = true;
      return enter(root_, start_);
    }
    if (stack_.empty()) return std::nullopt;
    Frame& f = stack_.back();
    const std::uint32_t e = g_->child_begin[f.cur] + f.next;
    const std::uint32_t x = g_->child[e];
    const std::uint64_t acc = f.acc + g_->wsum[f.top] - g_->wsum[f.cur] + g_->edge_weight(e);
    detail::tick(ops_);  // arc
    if (++f.next == g_->degree(f.cur)) {
      if (f.cur == f.top) {
        stack_.pop_back();
        detail::tick(ops_);  // pop
      } else {
        ++f.level;
        f.cur = g_->tau.query(f.top, f.level);
        f.next = 1;
        detail::tick(ops_);  // level ancestor
      }
    }
    return enter(x, acc);
  }

  bool done() const { return started_ && stack_.empty(); }
  std::size_t frames() const { return stack_.size(); }

 private:
  struct Frame {
    std::uint32_t top;
    std::uint32_t cur;
    std::uint32_t level;
    std::uint32_t next;
    std::uint64_t acc;
  };

  PathItem enter(std::uint32_t x, std::uint64_t acc) {
    if (g_->is_leaf(x)) {
      detail::tick(ops_);  // emit
      return {g_->label[x], acc};
    }
    const std::uint32_t leaf = g_->tau.query(x, 0);
    stack_.push_back({x, g_->tau.query(x, 1), 1, 1, acc});
    detail::tick(ops_, 4);  // push, two level ancestors, emit
    detail::frames(ops_, stack_.size());
    return {g_->label[leaf], acc + g_->wsum[x]};
  }

  const OrderedDag* g_ = nullptr;
  OpCounter* ops_ = nullptr;
  std::uint32_t root_ = 0;
  std::uint64_t start_ = 0;
  bool started_ = false;
  std::vector<Frame> stack_;
};

/// Emits the first min(k, size(v)) symbols below v; returns how many.
template <class Emit>
std::uint64_t extract_prefix(const OrderedDag& g, std::uint32_t v, std::uint64_t k, Emit&& emit,
                             OpCounter* ops = nullptr) {
  if (k == 0) return 0;
  PathCursor cur(g, v, 0, ops);
  std::uint64_t out = 0;
  while (out < k) {
    auto item = cur.next();
    if (!item) break;
    emit(item->symbol);
    ++out;
  }
  return out;
}

/// Longest common prefix of s and the expansion of v.
inline std::uint64_t match_prefix(const OrderedDag& g, std::uint32_t v,
                                  std::span<const symbol_t> s, OpCounter* ops = nullptr) {
  if (s.empty()) return 0;
  PathCursor cur(g, v, 0, ops);
  std::uint64_t k = 0;
  while (k < s.size()) {
    auto item = cur.next();
    if (!item || item->symbol != s[k]) break;
    ++k;
  }
  return k;
}

/// Weights of the first k root-to-leaf paths below v in preorder.
inline std::vector<std::uint64_t> path_weights(const OrderedDag& g, std::uint32_t v,
                                               std::uint64_t k, std::uint64_t start_weight = 0,
                                               OpCounter* ops = nullptr) {
  std::vector<std::uint64_t> out;
  PathCursor cur(g, v, start_weight, ops);
  while (out.size() < k) {
    auto item = cur.next();
    if (!item) break;
    out.push_back(item->weight);
  }
  return out;
}

}  // namespace cdawg
