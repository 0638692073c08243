#pragma once

#include <bitset>
#include <cstdint>
#include <limits>
#include <span>
#include <utility>
#include <vector>

#include "cdawg/suffix_array.hpp"
#include "cdawg/text.hpp"

namespace cdawg {

inline constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();

/// Closed range [sp..ep] of suffix-array ranks.
struct Interval {
  std::uint32_t sp = 0;
  std::uint32_t ep = 0;

  std::uint32_t size() const { return ep - sp + 1; }
  bool contains(Interval o) const { return sp <= o.sp && o.ep <= ep; }
  friend bool operator==(Interval, Interval) = default;
};

/// Suffix tree over a SuffixArrayBundle. Internal nodes take ids
/// [0, internal_count) in post-order, so the root is internal_count - 1;
/// the leaf of rank r has id internal_count + r.
struct SuffixTree {
  std::uint32_t n = 0;
  std::uint32_t internal_count = 0;
  std::uint32_t root = kNone;

  std::vector<std::uint32_t> depth;   // string depth, all nodes
  std::vector<Interval> interval;     // all nodes
  std::vector<std::uint32_t> parent;  // all nodes; kNone for the root
  std::vector<std::uint32_t> child_begin;  // internal nodes, CSR into children
  std::vector<std::uint32_t> children;     // ordered by first symbol
  std::vector<std::uint32_t> suffix_link;  // internal nodes; kNone for the root
  std::vector<bool> left_maximal;          // internal nodes
  std::vector<std::uint32_t> left_ext_begin;  // internal nodes, CSR into left_ext
  std::vector<symbol_t> left_ext;             // real left extensions, ascending

  std::size_t node_count() const { return depth.size(); }
  bool is_leaf(std::uint32_t v) const { return v >= internal_count; }
  std::uint32_t leaf(std::uint32_t rank) const { return internal_count + rank; }
  std::uint32_t leaf_rank(std::uint32_t v) const { return v - internal_count; }
  std::uint32_t freq(std::uint32_t v) const { return interval[v].size(); }

  std::span<const std::uint32_t> children_of(std::uint32_t v) const {
    if (is_leaf(v)) return {};
    return std::span<const std::uint32_t>(children).subspan(child_begin[v],
                                                            child_begin[v + 1] - child_begin[v]);
  }
  std::span<const symbol_t> left_extensions(std::uint32_t v) const {
    return std::span<const symbol_t>(left_ext).subspan(left_ext_begin[v],
                                                       left_ext_begin[v + 1] - left_ext_begin[v]);
  }
};

inline Interval node_interval(const SuffixTree& st, std::uint32_t v) { return st.interval[v]; }

namespace detail {

/// Answers offline "topmost ancestor-or-self of `node` whose key is at least
/// `bound`" queries on a rooted tree whose keys strictly increase from the
/// root downward. One iterative DFS; each query is a binary search on the
/// current root path.
template <class Children, class Key>
std::vector<std::uint32_t> topmost_ancestor_at_least(
    std::uint32_t root, std::size_t node_count, Children&& children_of, Key&& key,
    std::span<const std::pair<std::uint32_t, std::uint32_t>> queries) {
  std::vector<std::uint32_t> q_begin(node_count + 1, 0), q_order(queries.size());
  for (const auto& q : queries) ++q_begin[q.first + 1];
  for (std::size_t v = 0; v < node_count; ++v) q_begin[v + 1] += q_begin[v];
  {
    auto fill = q_begin;
    for (std::uint32_t i = 0; i < queries.size(); ++i) q_order[fill[queries[i].first]++] = i;
  }
  std::vector<std::uint32_t> answer(queries.size(), kNone);
  std::vector<std::uint32_t> path;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> dfs;  // (node, next child slot)
  dfs.emplace_back(root, 0);
  path.push_back(root);
  auto answer_at = [&](std::uint32_t v) {
    for (std::uint32_t k = q_begin[v]; k < q_begin[v + 1]; ++k) {
      const std::uint32_t qi = q_order[k];
      const std::uint32_t bound = queries[qi].second;
      std::size_t lo = 0, hi = path.size() - 1;
      while (lo < hi) {
        std::size_t mid = (lo + hi) / 2;
        if (key(path[mid]) >= bound) hi = mid; else lo = mid + 1;
      }
      answer[qi] = path[lo];
    }
  };
  answer_at(root);
  while (!dfs.empty()) {
    auto& [v, slot] = dfs.back();
    auto kids = children_of(v);
    if (slot < kids.size()) {
      const std::uint32_t c = kids[slot++];
      path.push_back(c);
      answer_at(c);
      dfs.emplace_back(c, 0);
    } else {
      dfs.pop_back();
      path.pop_back();
    }
  }
  return answer;
}

}  // namespace detail

/// Bottom-up lcp-interval construction; suffix links and left-extension
/// sets are filled in afterwards.
inline SuffixTree build_suffix_tree(const Text& t, const SuffixArrayBundle& b) {
  using ExtSet = std::bitset<257>;
  constexpr std::size_t kVirtual = 256;
  const std::uint32_t n = static_cast<std::uint32_t>(b.size());
  SuffixTree st;
  st.n = n;

  struct Pending {
    std::uint32_t depth;
    std::uint32_t lb;
    std::vector<std::uint32_t> kids;  // leaves encoded as kLeafBit | rank
    ExtSet ext;
  };
  constexpr std::uint32_t kLeafBit = 1u << 31;

  std::vector<std::uint32_t> int_depth, int_sp, int_ep;
  std::vector<std::vector<std::uint32_t>> int_kids;
  std::vector<bool> lmax;
  std::vector<std::uint32_t> lext_begin{0};
  std::vector<symbol_t> lext;

  auto leaf_ext = [&](std::uint32_t r) {
    ExtSet e;
    e.set(b.sa[r] == 0 ? kVirtual : t[b.sa[r] - 1]);
    return e;
  };
  auto finalize = [&](Pending& p, std::uint32_t rb) {
    const std::uint32_t id = static_cast<std::uint32_t>(int_depth.size());
    int_depth.push_back(p.depth);
    int_sp.push_back(p.lb);
    int_ep.push_back(rb);
    int_kids.push_back(std::move(p.kids));
    lmax.push_back(p.ext.count() > 1);
    for (std::size_t c = 0; c < 256; ++c) {
      if (p.ext.test(c)) lext.push_back(static_cast<symbol_t>(c));
    }
    lext_begin.push_back(static_cast<std::uint32_t>(lext.size()));
    return id;
  };

  std::vector<Pending> stack;
  stack.push_back({0, 0, {}, {}});
  for (std::uint32_t i = 1; i <= n; ++i) {
    std::uint32_t lb = i - 1;
    const std::uint32_t cur = i < n ? b.lcp[i] : 0;
    std::uint32_t child = kLeafBit | (i - 1);
    ExtSet child_ext = leaf_ext(i - 1);
    while (cur < stack.back().depth) {
      Pending top = std::move(stack.back());
      stack.pop_back();
      top.kids.push_back(child);
      top.ext |= child_ext;
      lb = top.lb;
      child_ext = top.ext;
      child = finalize(top, i - 1);
    }
    if (cur > stack.back().depth) {
      stack.push_back({cur, lb, {child}, child_ext});
    } else {
      stack.back().kids.push_back(child);
      stack.back().ext |= child_ext;
    }
  }
  st.root = finalize(stack.back(), n - 1);
  stack.clear();

  const std::uint32_t ic = static_cast<std::uint32_t>(int_depth.size());
  st.internal_count = ic;
  const std::size_t total = static_cast<std::size_t>(ic) + n;
  st.depth.resize(total);
  st.interval.resize(total);
  st.parent.assign(total, kNone);
  st.child_begin.assign(ic + 1, 0);
  for (std::uint32_t v = 0; v < ic; ++v) {
    st.depth[v] = int_depth[v];
    st.interval[v] = {int_sp[v], int_ep[v]};
    st.child_begin[v + 1] = st.child_begin[v] + static_cast<std::uint32_t>(int_kids[v].size());
  }
  for (std::uint32_t r = 0; r < n; ++r) {
    st.depth[ic + r] = n - b.sa[r];
    st.interval[ic + r] = {r, r};
  }
  st.children.reserve(st.child_begin[ic]);
  for (std::uint32_t v = 0; v < ic; ++v) {
    for (std::uint32_t k : int_kids[v]) {
      const std::uint32_t id = (k & kLeafBit) ? ic + (k & ~kLeafBit) : k;
      st.children.push_back(id);
      st.parent[id] = v;
    }
  }
  int_kids.clear();
  st.left_maximal = std::move(lmax);
  st.left_ext_begin = std::move(lext_begin);
  st.left_ext = std::move(lext);

  // Suffix link of a node labeled aW: the node at depth |W| above the leaf
  // of the suffix that follows its leftmost occurrence.
  std::vector<std::pair<std::uint32_t, std::uint32_t>> queries;
  queries.reserve(ic);
  for (std::uint32_t v = 0; v < ic; ++v) {
    if (v == st.root) continue;
    const std::uint32_t next = b.sa[st.interval[v].sp] + 1;
    queries.emplace_back(st.leaf(b.isa[next]), st.depth[v] - 1);
  }
  auto answers = detail::topmost_ancestor_at_least(
      st.root, total, [&](std::uint32_t v) { return st.children_of(v); },
      [&](std::uint32_t v) { return st.depth[v]; }, queries);
  st.suffix_link.assign(ic, kNone);
  for (std::uint32_t v = 0, q = 0; v < ic; ++v) {
    if (v == st.root) continue;
    st.suffix_link[v] = answers[q++];
  }
  return st;
}

}  // namespace cdawg
