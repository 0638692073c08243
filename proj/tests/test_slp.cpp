#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "cdawg/index.hpp"
#include "cdawg/level_ancestor.hpp"
#include "cdawg/query.hpp"
#include "corpus.hpp"

using namespace cdawg;

namespace {

using U32 = std::vector<std::uint32_t>;
using U64 = std::vector<std::uint64_t>;

std::string expand(const OrderedDag& g, std::uint32_t v, std::uint64_t k = ~std::uint64_t{0}) {
  std::string s;
  extract_prefix(g, v, k, [&](symbol_t c) { s.push_back(static_cast<char>(c)); });
  return s;
}

// Recursive expansion, memoized per node.
class Memo {
 public:
  explicit Memo(const OrderedDag& g) : g_(g), memo_(g.node_count()), done_(g.node_count(), false) {}

  const Word& operator()(std::uint32_t v) {
    if (!done_[v]) {
      Word w;
      if (g_.is_leaf(v)) {
        w.push_back(g_.label[v]);
      } else {
        for (std::uint32_t c : g_.children_of(v)) w += (*this)(c);
      }
      memo_[v] = std::move(w);
      done_[v] = true;
    }
    return memo_[v];
  }

 private:
  const OrderedDag& g_;
  std::vector<Word> memo_;
  std::vector<bool> done_;
};

std::uint32_t naive_ancestor(const LevelAncestor& la, std::uint32_t v, std::uint32_t d) {
  while (la.depth(v) > d) v = la.parent(v);
  return v;
}

}  // namespace

TEST(Slp, BananaProductions) {
  const auto idx = build_index(Text::from_string("banana"));
  const Slp& g = idx.slp;
  const std::uint32_t a = g.terminal['a'], b = g.terminal['b'], n = g.terminal['n'], end = g.terminal[0];
  const std::uint32_t ana = 2;
  EXPECT_EQ(g.f[1], a);  // F_a collapses to its terminal
  const auto rhs = g.fwd.children_of(g.start);
  EXPECT_EQ(U32(rhs.begin(), rhs.end()), (U32{b, g.f[ana], g.f[ana], a, end}));
  const auto f_ana = g.fwd.children_of(g.f[ana]);
  EXPECT_EQ(U32(f_ana.begin(), f_ana.end()), (U32{a, n}));
  const auto l_ana = g.fwd.children_of(g.l[ana]);
  EXPECT_EQ(U32(l_ana.begin(), l_ana.end()), (U32{g.f[ana], g.l[1]}));
  EXPECT_EQ(expand(g.fwd, g.l[ana]), "ana");
  EXPECT_EQ(g.height, 2u);
  // The mirrored grammar spells every expansion backwards.
  EXPECT_EQ(expand(g.rev, g.start), std::string("\0ananab", 7));
}

TEST(Slp, TinyText) {
  const auto idx = build_index(Text::from_string("ab"));
  const Slp& g = idx.slp;
  const auto rhs = g.fwd.children_of(g.start);
  EXPECT_EQ(U32(rhs.begin(), rhs.end()), (U32{g.terminal['a'], g.terminal['b'], g.terminal[0]}));
  for (std::uint32_t c : rhs) EXPECT_TRUE(g.fwd.is_leaf(c));
}

TEST(LevelAncestor, TrivialCases) {
  const U32 parent{kNone, 0, 1, 2, 1, kNone, 5};
  const LevelAncestor la(parent);
  for (std::uint32_t v = 0; v < parent.size(); ++v) {
    EXPECT_EQ(la.query(v, la.depth(v)), v);
    EXPECT_EQ(la.parent(la.query(v, 0)), kNone);
  }
  EXPECT_EQ(la.query(3, 1), 1u);
  EXPECT_EQ(la.query(6, 0), 5u);
  EXPECT_THROW(la.query(4, 3), std::out_of_range);
}

TEST(LevelAncestor, MatchesNaiveWalk) {
  std::mt19937_64 rng(41);
  for (int it = 0; it < 40; ++it) {
    const std::uint32_t n = 1 + rng() % 600;
    U32 parent(n);
    for (std::uint32_t v = 0; v < n; ++v) {
      // Mix of paths and bushy parts, plus several roots.
      if (v == 0 || rng() % 50 == 0) {
        parent[v] = kNone;
      } else {
        parent[v] = rng() % 3 == 0 ? static_cast<std::uint32_t>(rng() % v) : v - 1;
      }
    }
    const LevelAncestor la(parent);
    for (std::uint32_t v = 0; v < n; ++v) {
      for (std::uint32_t d = 0; d <= la.depth(v); ++d) ASSERT_EQ(la.query(v, d), naive_ancestor(la, v, d));
    }
  }
}

TEST(ExtractPrefix, Examples) {
  const auto idx = build_index(Text::from_string("banana"));
  const Slp& g = idx.slp;
  EXPECT_EQ(expand(g.fwd, g.start, 4), "bana");
  std::string out;
  EXPECT_EQ(extract_prefix(g.fwd, g.start, 0, [&](symbol_t c) { out.push_back(static_cast<char>(c)); }), 0u);
  EXPECT_TRUE(out.empty());
  EXPECT_EQ(extract_prefix(g.fwd, g.f[2], 10, [&](symbol_t c) { out.push_back(static_cast<char>(c)); }), 2u);
  EXPECT_EQ(out, "an");
}

TEST(MatchPrefix, Examples) {
  const auto idx = build_index(Text::from_string("banana"));
  const Slp& g = idx.slp;
  EXPECT_EQ(match_prefix(g.fwd, g.start, to_word("banx")), 3u);
  EXPECT_EQ(match_prefix(g.fwd, g.start, to_word("")), 0u);
  EXPECT_EQ(match_prefix(g.fwd, g.f[2], to_word("an")), 2u);
  EXPECT_EQ(match_prefix(g.fwd, g.f[2], to_word("anan")), 2u);
  EXPECT_EQ(match_prefix(g.fwd, g.start, to_word("x")), 0u);
}

TEST(CharIterator, BananaThenEnd) {
  const auto idx = build_index(Text::from_string("banana"));
  OpCounter ops;
  auto it = char_iterator(idx.slp, idx.slp.start, &ops);
  std::string got;
  for (int k = 0; k < 7; ++k) {
    const std::uint64_t before = ops.ops;
    const auto c = it.next();
    ASSERT_TRUE(c.has_value());
    got.push_back(static_cast<char>(*c));
    EXPECT_LE(ops.ops - before, 16u);
  }
  EXPECT_EQ(got, std::string("banana\0", 7));
  EXPECT_FALSE(it.next().has_value());
  EXPECT_FALSE(it.next().has_value());
}

TEST(PathWeights, OffsetWeightsGiveSuffixOrder) {
  const auto idx = build_index(Text::from_string("banana"));
  const auto& c = idx.cdawg;
  EXPECT_EQ(path_weights(idx.lex_view, c.source, 7, 1), (U64{7, 6, 4, 2, 1, 5, 3}));
  EXPECT_EQ(path_weights(idx.lex_view, c.source, 1, 1), (U64{7}));
  // More requested than exist: all paths.
  EXPECT_EQ(path_weights(idx.lex_view, c.source, 50).size(), 7u);
  EXPECT_EQ(path_weights(idx.lex_view, 2, 50, 1), (U64{4, 2}));
}

TEST(PathWeights, RightWeightsGiveSuffixLengths) {
  const auto idx = build_index(Text::from_string("banana"));
  const auto& c = idx.cdawg;
  OrderedDag g;
  for (std::uint32_t v = 0; v < c.node_count(); ++v) {
    if (v == c.sink) {
      g.add_leaf(kSentinel);
      continue;
    }
    U32 kids;
    U64 w;
    for (std::uint32_t a = c.nodes[v].out_begin; a < c.nodes[v].out_end; ++a) {
      kids.push_back(c.arcs[a].to);
      w.push_back(c.arcs[a].right);
    }
    g.add_node(kids, w);
  }
  U32 order(c.node_count());
  for (std::uint32_t i = 0; i < order.size(); ++i) order[i] = static_cast<std::uint32_t>(order.size()) - 1 - i;
  g.finalize(order);
  // Lengths of #, a#, ana#, anana#, banana#, na#, nana#.
  EXPECT_EQ(path_weights(g, c.source, 7), (U64{1, 2, 4, 6, 7, 3, 5}));
  EXPECT_EQ(path_weights(g, c.source, 1), (U64{1}));
}

TEST(PathWeights, UnweightedGivesZeros) {
  const auto idx = build_index(Text::from_string("banana"));
  EXPECT_EQ(path_weights(idx.slp.fwd, idx.slp.start, 5), (U64(5, 0)));
}

TEST(PathWeights, MatchesNaiveEnumeration) {
  std::mt19937_64 rng(42);
  for (int it = 0; it < 40; ++it) {
    const auto idx = build_index(Text::from_string(fixtures::random_text(rng, 1 + rng() % 150, 2 + rng() % 4)));
    for (Order o : {Order::lex, Order::freq}) {
      const OrderedDag& g = idx.view(o);
      for (std::uint32_t v = 0; v < g.node_count(); ++v) {
        U64 naive;
        std::vector<std::pair<std::uint32_t, std::uint64_t>> stack{{v, 0}};
        while (!stack.empty()) {
          const auto [x, w] = stack.back();
          stack.pop_back();
          if (g.is_leaf(x)) {
            naive.push_back(w);
            continue;
          }
          for (std::uint32_t e = g.child_begin[x + 1]; e-- > g.child_begin[x];) {
            stack.push_back({g.child[e], w + g.edge_weight(e)});
          }
        }
        ASSERT_EQ(path_weights(g, v, naive.size() + 3), naive);
      }
    }
  }
}

class GrammarRoundTrip : public ::testing::TestWithParam<int> {};

TEST_P(GrammarRoundTrip, EveryNodeMatchesMemoizedExpansion) {
  std::mt19937_64 rng(500 + GetParam());
  std::string s;
  if (GetParam() < 13) {
    s = fixtures::repetitive_family(GetParam() % 10);
  } else {
    static constexpr unsigned kSigmas[] = {2, 4, 16};
    s = fixtures::random_text(rng, 1 + rng() % 400, kSigmas[GetParam() % 3]);
  }
  const auto idx = build_index(Text::from_string(s));
  EXPECT_EQ(to_string(reconstruct_text(idx)), s + std::string(1, '\0'));
  for (const OrderedDag* g : {&idx.slp.fwd, &idx.slp.rev}) {
    Memo memo(*g);
    for (std::uint32_t v = 0; v < g->node_count(); ++v) {
      const Word& want = memo(v);
      ASSERT_EQ(g->size[v], want.size());
      // Full expansion through a cursor, metered per call.
      OpCounter ops;
      PathCursor cur(*g, v, 0, &ops);
      Word got;
      while (true) {
        const std::uint64_t before = ops.ops;
        auto item = cur.next();
        EXPECT_LE(ops.ops - before, 16u);
        if (!item) break;
        got.push_back(item->symbol);
        EXPECT_LE(cur.frames(), std::min<std::uint64_t>(got.size(), g->height[v]) + 1);
      }
      ASSERT_EQ(got, want);
      // Prefixes.
      const std::uint64_t k = rng() % (want.size() + 2);
      OpCounter pre;
      Word part;
      const auto emitted = extract_prefix(*g, v, k, [&](symbol_t c) { part.push_back(c); }, &pre);
      EXPECT_EQ(emitted, std::min<std::uint64_t>(k, want.size()));
      EXPECT_EQ(part, want.substr(0, emitted));
      EXPECT_LE(pre.peak_frames, std::min<std::uint64_t>(k, g->height[v]) + 1);
      EXPECT_EQ(match_prefix(*g, v, want), want.size());
    }
  }
  // The char iterator over every grammar symbol.
  Memo memo(idx.slp.fwd);
  for (std::uint32_t v = 0; v < idx.slp.fwd.node_count(); ++v) {
    auto it = char_iterator(idx.slp, v);
    Word got;
    while (auto c = it.next()) got.push_back(*c);
    ASSERT_EQ(got, memo(v));
  }
}

INSTANTIATE_TEST_SUITE_P(Corpus, GrammarRoundTrip, ::testing::Range(0, 45));
