#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "cdawg/cdawg.hpp"
#include "cdawg/ordered_dag.hpp"
#include "cdawg/slp.hpp"
#include "cdawg/suffix_array.hpp"
#include "cdawg/suffix_tree.hpp"
#include "cdawg/text.hpp"

namespace cdawg {

enum class Order { lex, freq };

/// Everything the queries need: the CDAWG, its grammar, and two views of
/// the CDAWG as an ordered DAG whose leaf is the sink. Edge weights in the
/// views are arc offsets, so a path's weight is the start of the suffix it
/// spells relative to the occurrence of the path's first node.
struct Index {
  Cdawg cdawg;
  Slp slp;
  OrderedDag lex_view;
  OrderedDag freq_view;

  std::uint32_t n() const { return cdawg.n; }
  const OrderedDag& view(Order o) const { return o == Order::lex ? lex_view : freq_view; }
};

namespace detail {

inline OrderedDag make_view(const Cdawg& c, Order order) {
  OrderedDag g;
  std::vector<std::uint32_t> arcs, kids;
  std::vector<std::uint64_t> weights;
  auto target_freq = [&](std::uint32_t a) { return c.nodes[c.arcs[a].to].freq; };
  for (std::uint32_t v = 0; v < c.node_count(); ++v) {
    if (v == c.sink) {
      g.add_leaf(kSentinel);
      continue;
    }
    arcs.clear();
    for (std::uint32_t a = c.nodes[v].out_begin; a < c.nodes[v].out_end; ++a) arcs.push_back(a);
    if (order == Order::freq) {
      // Arcs are already in symbol order, so a stable sort breaks ties by symbol.
      std::stable_sort(arcs.begin(), arcs.end(), [&](std::uint32_t x, std::uint32_t y) {
        return target_freq(x) > target_freq(y);
      });
    }
    kids.clear();
    weights.clear();
    for (std::uint32_t a : arcs) {
      kids.push_back(c.arcs[a].to);
      weights.push_back(c.arcs[a].offset);
    }
    g.add_node(kids, weights);
  }
  std::vector<std::uint32_t> bottom_up(c.node_count());
  for (std::uint32_t i = 0; i < bottom_up.size(); ++i) {
    bottom_up[i] = static_cast<std::uint32_t>(bottom_up.size()) - 1 - i;
  }
  g.finalize(bottom_up);
  return g;
}

}  // namespace detail

inline Index build_index(const Text& t) {
  Index idx;
  {
    auto b = build_suffix_array(t);
    auto st = build_suffix_tree(t, b);
    idx.cdawg = build_cdawg(t, st, b);
  }
  idx.slp = build_slp(idx.cdawg);
  idx.lex_view = detail::make_view(idx.cdawg, Order::lex);
  idx.freq_view = detail::make_view(idx.cdawg, Order::freq);
  return idx;
}

}  // namespace cdawg
