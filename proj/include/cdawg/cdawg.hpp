#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "cdawg/suffix_array.hpp"
#include "cdawg/suffix_tree.hpp"
#include "cdawg/text.hpp"

namespace cdawg {

struct CdawgNode {
  std::uint32_t length = 0;  // |label|; n for the sink
  std::uint32_t freq = 0;
  // Longest proper suffix that is a maximal repeat; the source for the
  // sink, kNone for the source.
  std::uint32_t suffix_pointer = kNone;
  Interval interval;
  std::uint32_t class_size = 0;  // right-maximal strings merged into this node
  std::uint32_t pi_length = 0;   // length - length(suffix_pointer); n for the sink
  std::uint32_t in_begin = 0, in_end = 0;      // into Cdawg::in_arcs / in_offset
  std::uint32_t out_begin = 0, out_end = 0;    // arc id range, ascending by symbol
  std::uint32_t lext_begin = 0, lext_end = 0;  // into Cdawg::left_ext
};

struct CdawgArc {
  std::uint32_t from = kNone;
  std::uint32_t to = kNone;
  symbol_t ch = 0;
  std::uint32_t right = 0;
  // Sink arcs only: 0-based start of label(from)·ch in T. kNone otherwise.
  std::uint32_t pos = kNone;
  Interval label_interval;      // interval of the arc label
  Interval extension_interval;  // interval of label(from)·ch at the class head of `from`
  std::uint32_t order = 0;      // 1-based rank of this arc among the in-arcs of `to`
  std::int16_t previous_char = -1;
  std::uint32_t nonterminal_ref = 0;  // order - 1
  // Start of this arc's slot inside label(to). Equals to.length -
  // from.length - right, which for sink arcs is pos.
  std::uint32_t offset = 0;
  // First node on the suffix-pointer chain of `to` whose label is at least
  // as long as the arc label while its own suffix pointer's label is not;
  // label_run is the in-arc slot of that node holding the label start.
  std::uint32_t label_owner = kNone;
  std::uint32_t label_run = 0;
};

/// Open-addressing map (node, symbol) -> arc id.
class ChildTable {
 public:
  void build(std::span<const CdawgArc> arcs) {
    std::size_t cap = 16;
    while (cap < arcs.size() * 2) cap <<= 1;
    mask_ = cap - 1;
    keys_.assign(cap, kEmpty);
    vals_.assign(cap, kNone);
    for (std::uint32_t a = 0; a < arcs.size(); ++a) {
      const std::uint64_t key = pack(arcs[a].from, arcs[a].ch);
      std::size_t slot = hash(key) & mask_;
      while (keys_[slot] != kEmpty) slot = (slot + 1) & mask_;
      keys_[slot] = key;
      vals_[slot] = a;
    }
  }

  std::uint32_t find(std::uint32_t node, symbol_t c) const {
    if (keys_.empty()) return kNone;
    const std::uint64_t key = pack(node, c);
    for (std::size_t slot = hash(key) & mask_;; slot = (slot + 1) & mask_) {
      if (keys_[slot] == key) return vals_[slot];
      if (keys_[slot] == kEmpty) return kNone;
    }
  }

 private:
  static constexpr std::uint64_t kEmpty = ~std::uint64_t{0};
  static std::uint64_t pack(std::uint32_t node, symbol_t c) {
    return (static_cast<std::uint64_t>(node) << 8) | c;
  }
  static std::uint64_t hash(std::uint64_t x) {
    x ^= x >> 31;
    x *= 0x9e3779b97f4a7c15ULL;
    x ^= x >> 29;
    return x;
  }
  std::vector<std::uint64_t> keys_;
  std::vector<std::uint32_t> vals_;
  std::size_t mask_ = 0;
};

/// Compact directed acyclic word graph with the annotations the query
/// engine relies on. Nodes are numbered by nondecreasing label length, so
/// the source is 0, the sink is last, and node order is topological.
struct Cdawg {
  std::uint32_t n = 0;
  std::uint32_t sigma = 0;
  std::uint32_t source = 0;
  std::uint32_t sink = 0;
  std::uint32_t h = 0;  // arcs on a longest source-to-sink path

  std::vector<CdawgNode> nodes;
  std::vector<CdawgArc> arcs;
  std::vector<std::uint32_t> in_arcs;    // per node, slot order
  std::vector<std::uint32_t> in_offset;  // parallel to in_arcs: slot start in label(to)
  std::vector<symbol_t> left_ext;
  ChildTable table;

  std::size_t node_count() const { return nodes.size(); }
  std::size_t arc_count() const { return arcs.size(); }
  bool is_sink_arc(std::uint32_t a) const { return arcs[a].to == sink; }

  std::span<const std::uint32_t> in_arcs_of(std::uint32_t v) const {
    return std::span<const std::uint32_t>(in_arcs).subspan(nodes[v].in_begin,
                                                           nodes[v].in_end - nodes[v].in_begin);
  }
  std::span<const std::uint32_t> in_offsets_of(std::uint32_t v) const {
    return std::span<const std::uint32_t>(in_offset).subspan(nodes[v].in_begin,
                                                             nodes[v].in_end - nodes[v].in_begin);
  }
  std::span<const symbol_t> left_extensions(std::uint32_t v) const {
    return std::span<const symbol_t>(left_ext).subspan(nodes[v].lext_begin,
                                                       nodes[v].lext_end - nodes[v].lext_begin);
  }

  /// Arc out of v whose label starts with c, or kNone. Hash lookup.
  std::uint32_t child(std::uint32_t v, symbol_t c) const { return table.find(v, c); }

  /// Same lookup by binary search over the sorted out-arcs of v.
  std::uint32_t child_sorted(std::uint32_t v, symbol_t c) const {
    std::uint32_t lo = nodes[v].out_begin, hi = nodes[v].out_end;
    while (lo < hi) {
      const std::uint32_t mid = (lo + hi) / 2;
      if (arcs[mid].ch < c) lo = mid + 1; else hi = mid;
    }
    return (lo < nodes[v].out_end && arcs[lo].ch == c) ? lo : kNone;
  }

  /// Length of the slot that arc a fills inside label(to).
  std::uint32_t slot_length(std::uint32_t a) const {
    const auto from = arcs[a].from;
    return from == source ? 1 : nodes[from].pi_length;
  }

  /// Index of the in-arc slot of v that covers offset `off` of label(v).
  std::uint32_t slot_at(std::uint32_t v, std::uint32_t off) const {
    auto offs = in_offsets_of(v);
    return static_cast<std::uint32_t>(std::upper_bound(offs.begin(), offs.end(), off) -
                                       offs.begin()) - 1;
  }
};

class arc_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Left extension implied by a non-sink arc.
inline std::uint32_t arc_left(const Cdawg& c, std::uint32_t a) {
  const auto& arc = c.arcs.at(a);
  if (arc.to == c.sink) throw arc_error("left extension is undefined for sink arcs");
  return c.nodes[arc.to].length - c.nodes[arc.from].length - arc.right;
}

struct CdawgStats {
  std::uint64_t n = 0;
  std::uint64_t sigma = 0;
  std::uint64_t node_count = 0;
  std::uint64_t e = 0;
  std::uint64_t h = 0;
  std::uint64_t maximal_repeat_count = 0;
  std::uint64_t sink_in_degree = 0;
};

inline CdawgStats stats(const Cdawg& c) {
  CdawgStats s;
  s.n = c.n;
  s.sigma = c.sigma;
  s.node_count = c.node_count();
  s.e = c.arc_count();
  s.h = c.h;
  s.maximal_repeat_count = c.node_count() - 1;
  s.sink_in_degree = c.nodes[c.sink].in_end - c.nodes[c.sink].in_begin;
  return s;
}

/// Minimizes the suffix tree: every left-maximal internal node heads an
/// equivalence class reached from its members through explicit Weiner
/// links, and all leaves merge into the sink.
inline Cdawg build_cdawg(const Text& t, const SuffixTree& st, const SuffixArrayBundle& b) {
  const std::uint32_t n = st.n;
  const std::uint32_t ic = st.internal_count;
  Cdawg g;
  g.n = n;
  g.sigma = t.sigma();

  // Class representative of every internal node.
  std::vector<std::uint32_t> weiner(ic, kNone);
  for (std::uint32_t u = 0; u < ic; ++u) {
    const std::uint32_t v = st.suffix_link[u];
    if (v != kNone && !st.left_maximal[v] && st.freq(u) == st.freq(v)) weiner[v] = u;
  }
  std::vector<std::uint32_t> rep(ic, kNone);
  std::vector<std::uint32_t> chain;
  for (std::uint32_t v = 0; v < ic; ++v) {
    std::uint32_t u = v;
    while (rep[u] == kNone && !st.left_maximal[u]) {
      chain.push_back(u);
      u = weiner[u];
      if (u == kNone) throw std::logic_error("non-left-maximal node without Weiner link");
    }
    const std::uint32_t r = rep[u] == kNone ? u : rep[u];
    rep[u] = r;
    for (std::uint32_t x : chain) rep[x] = r;
    chain.clear();
  }

  // Nodes: class heads by depth, then the sink.
  std::vector<std::uint32_t> heads;
  for (std::uint32_t v = 0; v < ic; ++v) {
    if (st.left_maximal[v]) heads.push_back(v);
  }
  std::stable_sort(heads.begin(), heads.end(),
                   [&](std::uint32_t a, std::uint32_t b2) { return st.depth[a] < st.depth[b2]; });
  if (heads.empty() || heads.front() != st.root) throw std::logic_error("root must head a class");
  std::vector<std::uint32_t> node_of(ic, kNone);
  for (std::uint32_t i = 0; i < heads.size(); ++i) node_of[heads[i]] = i;
  const std::uint32_t node_total = static_cast<std::uint32_t>(heads.size()) + 1;
  g.source = 0;
  g.sink = node_total - 1;
  g.nodes.resize(node_total);
  auto cnode = [&](std::uint32_t st_node) {
    return st.is_leaf(st_node) ? g.sink : node_of[rep[st_node]];
  };

  // Per-node fields, suffix pointers and left extensions.
  for (std::uint32_t i = 0; i < heads.size(); ++i) {
    const std::uint32_t v = heads[i];
    auto& node = g.nodes[i];
    node.length = st.depth[v];
    node.interval = st.interval[v];
    node.freq = node.interval.size();
    std::uint32_t size = 1;
    std::uint32_t u = st.suffix_link[v];
    while (u != kNone && !st.left_maximal[u]) {
      ++size;
      u = st.suffix_link[u];
    }
    node.class_size = size;
    node.suffix_pointer = (u == kNone) ? kNone : node_of[u];
    node.pi_length = node.suffix_pointer == kNone
                         ? 0
                         : node.length - st.depth[heads[node.suffix_pointer]];
    if (v != st.root && node.pi_length != node.class_size) {
      throw std::logic_error("class size disagrees with suffix pointer");
    }
    node.lext_begin = static_cast<std::uint32_t>(g.left_ext.size());
    // The empty string also occurs after the sentinel.
    if (v == st.root) g.left_ext.push_back(kSentinel);
    for (symbol_t c : st.left_extensions(v)) g.left_ext.push_back(c);
    node.lext_end = static_cast<std::uint32_t>(g.left_ext.size());
  }
  {
    auto& sink = g.nodes[g.sink];
    sink.length = n;
    sink.freq = 1;
    sink.suffix_pointer = g.source;
    sink.interval = {b.isa[0], b.isa[0]};
    sink.class_size = n;
    sink.pi_length = n;
    sink.lext_begin = sink.lext_end = static_cast<std::uint32_t>(g.left_ext.size());
  }

  // Arcs, in node order and then symbol order. Arc labels are themselves
  // right-maximal (or suffixes); their intervals come from one offline
  // ancestor query per arc.
  std::vector<std::pair<std::uint32_t, std::uint32_t>> label_queries;
  for (std::uint32_t i = 0; i < heads.size(); ++i) {
    const std::uint32_t v = heads[i];
    g.nodes[i].out_begin = static_cast<std::uint32_t>(g.arcs.size());
    for (std::uint32_t c : st.children_of(v)) {
      CdawgArc arc;
      arc.from = i;
      arc.to = cnode(c);
      const std::uint32_t at = b.sa[st.interval[c].sp];
      arc.ch = t[at + st.depth[v]];
      arc.right = st.depth[c] - st.depth[v];
      if (st.is_leaf(c)) arc.pos = at;
      arc.extension_interval = st.interval[c];
      label_queries.emplace_back(st.leaf(b.isa[at + st.depth[v]]), arc.right);
      g.arcs.push_back(arc);
    }
    g.nodes[i].out_end = static_cast<std::uint32_t>(g.arcs.size());
  }
  g.nodes[g.sink].out_begin = g.nodes[g.sink].out_end = static_cast<std::uint32_t>(g.arcs.size());
  {
    auto found = detail::topmost_ancestor_at_least(
        st.root, st.node_count(), [&](std::uint32_t v) { return st.children_of(v); },
        [&](std::uint32_t v) { return st.depth[v]; }, label_queries);
    for (std::size_t a = 0; a < g.arcs.size(); ++a) {
      if (st.depth[found[a]] != g.arcs[a].right) throw std::logic_error("arc label is not a node");
      g.arcs[a].label_interval = st.interval[found[a]];
    }
  }
  g.table.build(g.arcs);

  // In-arc slots. Members of a class are visited from the longest; the arc
  // entering each member from its suffix-tree parent names the slot.
  std::vector<std::uint32_t> first_slot_of_arc(g.arcs.size(), kNone);
  auto add_slots = [&](std::uint32_t w, auto&& members) {
    auto& node = g.nodes[w];
    node.in_begin = static_cast<std::uint32_t>(g.in_arcs.size());
    std::uint32_t off = 0;
    std::uint32_t run_arc = kNone, run_len = 0;
    auto close_run = [&] {
      if (run_arc == kNone) return;
      if (run_len != g.slot_length(run_arc)) throw std::logic_error("in-arc slot has wrong length");
      run_arc = kNone;
    };
    members([&](std::uint32_t member, std::uint32_t member_pos) {
      const std::uint32_t p = st.parent[member];
      const symbol_t c = t[member_pos + st.depth[p]];
      const std::uint32_t a = g.child(node_of[rep[p]], c);
      if (a == kNone || g.arcs[a].to != w) throw std::logic_error("member parent arc mismatch");
      if (a != run_arc) {
        close_run();
        if (first_slot_of_arc[a] != kNone) throw std::logic_error("in-arc slots not contiguous");
        first_slot_of_arc[a] = static_cast<std::uint32_t>(g.in_arcs.size());
        auto& arc = g.arcs[a];
        arc.nonterminal_ref = static_cast<std::uint32_t>(g.in_arcs.size()) - node.in_begin;
        arc.order = arc.nonterminal_ref + 1;
        arc.offset = off;
        g.in_arcs.push_back(a);
        g.in_offset.push_back(off);
        run_arc = a;
        run_len = 0;
      }
      ++run_len;
      ++off;
    });
    close_run();
    node.in_end = static_cast<std::uint32_t>(g.in_arcs.size());
    if (off != node.pi_length) throw std::logic_error("in-arc slots do not cover the class");
  };
  g.nodes[g.source].in_begin = g.nodes[g.source].in_end = 0;
  for (std::uint32_t i = 1; i < heads.size(); ++i) {
    add_slots(i, [&](auto&& visit) {
      for (std::uint32_t u = heads[i], k = 0; k < g.nodes[i].class_size; ++k) {
        visit(u, b.sa[st.interval[u].sp]);
        u = st.suffix_link[u];
      }
    });
  }
  add_slots(g.sink, [&](auto&& visit) {
    for (std::uint32_t p = 0; p < n; ++p) visit(st.leaf(b.isa[p]), p);
  });

  for (auto& arc : g.arcs) {
    const auto& to = g.nodes[arc.to];
    if (arc.offset != to.length - g.nodes[arc.from].length - arc.right) {
      throw std::logic_error("arc offset disagrees with left extension");
    }
    if (arc.offset > 0) {
      const std::uint32_t label_at = arc.to == g.sink ? 0 : b.sa[to.interval.sp];
      arc.previous_char = t[label_at + arc.offset - 1];
    }
  }

  // Longest path, in topological (length) order.
  std::vector<std::uint32_t> dist(node_total, 0);
  for (std::uint32_t v = 0; v < node_total; ++v) {
    for (std::uint32_t a = g.nodes[v].out_begin; a < g.nodes[v].out_end; ++a) {
      dist[g.arcs[a].to] = std::max(dist[g.arcs[a].to], dist[v] + 1);
    }
  }
  g.h = dist[g.sink];

  // Label owners, on the tree of suffix pointers (the sink hangs off the source).
  {
    std::vector<std::uint32_t> kid_begin(node_total + 1, 0), kids;
    auto parent_of = [&](std::uint32_t v) -> std::uint32_t {
      if (v == g.source) return kNone;
      if (v == g.sink) return g.source;
      return g.nodes[v].suffix_pointer;
    };
    for (std::uint32_t v = 0; v < node_total; ++v) {
      if (auto p = parent_of(v); p != kNone) ++kid_begin[p + 1];
    }
    for (std::uint32_t v = 0; v < node_total; ++v) kid_begin[v + 1] += kid_begin[v];
    kids.resize(kid_begin[node_total]);
    auto fill = kid_begin;
    for (std::uint32_t v = 0; v < node_total; ++v) {
      if (auto p = parent_of(v); p != kNone) kids[fill[p]++] = v;
    }
    std::vector<std::pair<std::uint32_t, std::uint32_t>> q;
    q.reserve(g.arcs.size());
    for (const auto& arc : g.arcs) q.emplace_back(arc.to, arc.right);
    auto owner = detail::topmost_ancestor_at_least(
        g.source, node_total,
        [&](std::uint32_t v) {
          return std::span<const std::uint32_t>(kids).subspan(kid_begin[v],
                                                              kid_begin[v + 1] - kid_begin[v]);
        },
        [&](std::uint32_t v) { return g.nodes[v].length; }, q);
    for (std::size_t a = 0; a < g.arcs.size(); ++a) {
      auto& arc = g.arcs[a];
      arc.label_owner = owner[a];
      arc.label_run = g.slot_at(owner[a], g.nodes[owner[a]].length - arc.right);
    }
  }
  return g;
}

inline Cdawg build_cdawg(const Text& t) {
  auto b = build_suffix_array(t);
  auto st = build_suffix_tree(t, b);
  return build_cdawg(t, st, b);
}

}  // namespace cdawg
