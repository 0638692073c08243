#pragma once

#include <bit>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "cdawg/suffix_tree.hpp"

namespace cdawg {

/// Constant-time level ancestor on a forest: long-path decomposition with
/// doubled ladders plus per-node jump pointers. Roots have depth 0.
class LevelAncestor {
 public:
  LevelAncestor() = default;

  explicit LevelAncestor(std::span<const std::uint32_t> parent) { build(parent); }

  void build(std::span<const std::uint32_t> parent) {
    const std::uint32_t n = static_cast<std::uint32_t>(parent.size());
    parent_.assign(parent.begin(), parent.end());
    depth_.assign(n, 0);

    std::vector<std::uint32_t> kid_begin(n + 1, 0), kids;
    for (std::uint32_t v = 0; v < n; ++v) {
      if (parent[v] != kNone) ++kid_begin[parent[v] + 1];
    }
    for (std::uint32_t v = 0; v < n; ++v) kid_begin[v + 1] += kid_begin[v];
    kids.resize(kid_begin[n]);
    {
      auto fill = kid_begin;
      for (std::uint32_t v = 0; v < n; ++v) {
        if (parent[v] != kNone) kids[fill[parent[v]]++] = v;
      }
    }
    // Top-down order.
    std::vector<std::uint32_t> order;
    order.reserve(n);
    for (std::uint32_t v = 0; v < n; ++v) {
      if (parent[v] == kNone) order.push_back(v);
    }
    for (std::size_t k = 0; k < order.size(); ++k) {
      const std::uint32_t v = order[k];
      for (std::uint32_t i = kid_begin[v]; i < kid_begin[v + 1]; ++i) {
        depth_[kids[i]] = depth_[v] + 1;
        order.push_back(kids[i]);
      }
    }
    if (order.size() != n) throw std::logic_error("parent array has a cycle");

    // Long paths.
    std::vector<std::uint32_t> height(n, 1), heavy(n, kNone);
    for (std::size_t k = n; k-- > 0;) {
      const std::uint32_t v = order[k];
      const std::uint32_t p = parent[v];
      if (p != kNone && height[v] + 1 > height[p]) {
        height[p] = height[v] + 1;
        heavy[p] = v;
      }
    }
    ladder_of_.assign(n, kNone);
    ladder_begin_.assign(1, 0);
    ladder_.clear();
    std::vector<std::uint32_t> path;
    for (std::uint32_t top : order) {
      if (parent[top] != kNone && heavy[parent[top]] == top) continue;
      path.clear();
      for (std::uint32_t v = top; v != kNone; v = heavy[v]) path.push_back(v);
      std::vector<std::uint32_t> above;
      for (std::uint32_t v = parent[top]; v != kNone && above.size() < path.size(); v = parent[v]) {
        above.push_back(v);
      }
      const std::uint32_t id = static_cast<std::uint32_t>(ladder_begin_.size()) - 1;
      ladder_.insert(ladder_.end(), above.rbegin(), above.rend());
      ladder_.insert(ladder_.end(), path.begin(), path.end());
      ladder_begin_.push_back(static_cast<std::uint32_t>(ladder_.size()));
      for (std::uint32_t v : path) ladder_of_[v] = id;
    }

    // Jump pointers: 2^i ancestors for every 2^i <= depth.
    jump_begin_.assign(n + 1, 0);
    for (std::uint32_t v = 0; v < n; ++v) {
      jump_begin_[v + 1] = jump_begin_[v] + static_cast<std::uint32_t>(std::bit_width(depth_[v]));
    }
    jump_.assign(jump_begin_[n], kNone);
    for (std::uint32_t v : order) {
      const std::uint32_t count = jump_begin_[v + 1] - jump_begin_[v];
      for (std::uint32_t i = 0; i < count; ++i) {
        jump_[jump_begin_[v] + i] = i == 0 ? parent[v] : jump_[jump_begin_[jump_[jump_begin_[v] + i - 1]] + i - 1];
      }
    }
  }

  std::size_t size() const { return depth_.size(); }
  std::uint32_t depth(std::uint32_t v) const { return depth_[v]; }
  std::uint32_t parent(std::uint32_t v) const { return parent_[v]; }

  /// Ancestor of v at depth d.
  std::uint32_t query(std::uint32_t v, std::uint32_t d) const {
    if (d > depth_[v]) throw std::out_of_range("level ancestor depth exceeds node depth");
    const std::uint32_t k = depth_[v] - d;
    if (k == 0) return v;
    const std::uint32_t i = static_cast<std::uint32_t>(std::bit_width(k)) - 1;
    const std::uint32_t u = jump_[jump_begin_[v] + i];
    const std::uint32_t lad = ladder_of_[u];
    const std::uint32_t first = ladder_[ladder_begin_[lad]];
    return ladder_[ladder_begin_[lad] + (d - depth_[first])];
  }

  // Raw tables, exposed for serialization.
  std::vector<std::uint32_t> parent_;
  std::vector<std::uint32_t> depth_;
  std::vector<std::uint32_t> ladder_;
  std::vector<std::uint32_t> ladder_begin_;
  std::vector<std::uint32_t> ladder_of_;
  std::vector<std::uint32_t> jump_begin_;
  std::vector<std::uint32_t> jump_;
};

}  // namespace cdawg
