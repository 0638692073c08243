#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "cdawg/cdawg.hpp"
#include "cdawg/ordered_dag.hpp"

namespace cdawg {

/// Grammar read off the reversed CDAWG.
///
/// F(w) expands to the first class_size(w) symbols of label(w), or to T for
/// the sink: its right-hand side lists the in-arc slots of w, a slot from
/// the source being the terminal that starts its arc label. Single-symbol
/// right-hand sides are collapsed, so F(w) may be a terminal or another
/// node's symbol. L(w) expands to all of label(w) through L(w) -> F(w) L(sp(w)).
///
/// `fwd` holds the grammar; `rev` is the same grammar with every right-hand
/// side reversed, for reading expansions from the right.
struct Slp {
  OrderedDag fwd;
  OrderedDag rev;
  std::array<std::uint32_t, 256> terminal{};  // leaf id per symbol, kNone if unused
  std::vector<std::uint32_t> f;  // per CDAWG node; kNone for the source
  std::vector<std::uint32_t> l;  // per CDAWG node; kNone for the source
  std::uint32_t start = kNone;   // F(sink)
  std::uint32_t height = 0;

  std::uint32_t slot_symbol(const Cdawg& c, std::uint32_t arc) const {
    const auto& a = c.arcs[arc];
    return a.from == c.source ? terminal[a.ch] : f[a.from];
  }
  std::uint64_t expansion_length(std::uint32_t sym) const { return fwd.size[sym]; }
};

inline Slp build_slp(const Cdawg& c) {
  Slp g;
  g.terminal.fill(kNone);
  const std::uint32_t nodes = static_cast<std::uint32_t>(c.node_count());
  g.f.assign(nodes, kNone);
  g.l.assign(nodes, kNone);

  auto use_terminal = [&](symbol_t s) {
    if (g.terminal[s] == kNone) {
      g.terminal[s] = g.fwd.add_leaf(s);
      g.rev.add_leaf(s);
    }
    return g.terminal[s];
  };
  for (const auto& a : c.arcs) {
    if (a.from == c.source) use_terminal(a.ch);
  }

  std::vector<std::uint32_t> rhs;
  auto add = [&](std::vector<std::uint32_t>& kids) {
    const std::uint32_t id = g.fwd.add_node(kids);
    std::reverse(kids.begin(), kids.end());
    g.rev.add_node(kids);
    return id;
  };
  for (std::uint32_t w = 0; w < nodes; ++w) {
    if (w == c.source) continue;
    rhs.clear();
    for (std::uint32_t a : c.in_arcs_of(w)) rhs.push_back(g.slot_symbol(c, a));
    if (rhs.empty()) throw std::logic_error("node without in-arcs");
    g.f[w] = rhs.size() == 1 ? rhs.front() : add(rhs);

    const std::uint32_t sp = c.nodes[w].suffix_pointer;
    if (w == c.sink || sp == c.source) {
      g.l[w] = g.f[w];
    } else {
      rhs.assign({g.f[w], g.l[sp]});
      g.l[w] = add(rhs);
    }
  }
  g.start = g.f[c.sink];
  g.fwd.finalize();
  g.rev.finalize();
  for (std::uint32_t v = 0; v < g.fwd.node_count(); ++v) {
    g.height = std::max(g.height, g.fwd.height[v]);
  }
  for (std::uint32_t w = 0; w < nodes; ++w) {
    if (w == c.source) continue;
    if (g.fwd.size[g.f[w]] != c.nodes[w].pi_length || g.fwd.size[g.l[w]] != c.nodes[w].length) {
      throw std::logic_error("grammar expansion length disagrees with the CDAWG");
    }
  }
  return g;
}

}  // namespace cdawg
