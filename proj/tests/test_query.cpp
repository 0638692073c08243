#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "cdawg/cdawg_index.hpp"
#include "cdawg/oracle.hpp"
#include "corpus.hpp"

using namespace cdawg;

namespace {

using U64 = std::vector<std::uint64_t>;
using U32 = std::vector<std::uint32_t>;

Pattern P(const std::string& s) { return Pattern::from_string(s); }

const Index& banana() {
  static const Index idx = build_index(Text::from_string("banana"));
  return idx;
}

std::uint32_t arc_of(const Index& idx, std::uint32_t from, char ch) {
  return idx.cdawg.child(from, static_cast<symbol_t>(ch));
}

std::vector<Word> words(std::initializer_list<const char*> list) {
  std::vector<Word> out;
  for (const char* s : list) out.push_back(to_word(s));
  return out;
}

Word rtl(const Index& idx, std::uint32_t a) {
  auto cur = extract_arc_label_rtl(idx, a);
  Word w;
  while (auto c = cur.next()) w.push_back(*c);
  return w;
}

}  // namespace

TEST(BlindSearch, Examples) {
  const Index& idx = banana();
  const auto nan = blind_search(idx, P("nan"));
  ASSERT_TRUE(nan.found);
  EXPECT_EQ(nan.node, idx.cdawg.sink);
  EXPECT_EQ(nan.begin + 1, 3u);  // 1-based occurrence
  EXPECT_FALSE(blind_search(idx, P("q")).found);
  const auto ana = blind_search(idx, P("ana"));
  ASSERT_TRUE(ana.found);
  EXPECT_EQ(ana.node, 2u);
  EXPECT_EQ(idx.cdawg.nodes[ana.node].freq, 2u);
  // Blind search can accept an absent pattern; verification rejects it.
  const auto anb = blind_search(idx, P("anb"));
  EXPECT_TRUE(anb.found);
  EXPECT_FALSE(search(idx, P("anb")).verified);
}

TEST(Count, Examples) {
  const Index& idx = banana();
  EXPECT_EQ(count(idx, P("ana")), 2u);
  EXPECT_EQ(count(idx, P("a")), 3u);
  EXPECT_EQ(count(idx, P("nan")), 1u);
  EXPECT_EQ(count(idx, Pattern::with_sentinel(to_word(std::string("banana\0", 7)))), 1u);
  EXPECT_EQ(count(idx, P("anb")), 0u);
  EXPECT_EQ(count(idx, P("")), 8u);
  EXPECT_EQ(count(idx, P("q")), 0u);
}

TEST(Locate, Examples) {
  const Index& idx = banana();
  EXPECT_EQ(locate(idx, P("ana")), (U64{2, 4}));
  EXPECT_EQ(locate(idx, P("a")), (U64{2, 4, 6}));
  EXPECT_EQ(locate(idx, Pattern::with_sentinel(to_word(std::string("\0", 1)))), (U64{7}));
  EXPECT_TRUE(locate(idx, P("x")).empty());
  EXPECT_EQ(locate(idx, P("")).size(), 8u);
}

TEST(ExtractArcLabel, Examples) {
  const Index& idx = banana();
  EXPECT_EQ(arc_label(idx, arc_of(idx, 0, 'b')), to_word(std::string("banana\0", 7)));
  EXPECT_EQ(arc_label(idx, arc_of(idx, 2, 'n')), to_word(std::string("na\0", 3)));
  EXPECT_EQ(arc_label(idx, arc_of(idx, 1, 'n')), to_word("na"));
  EXPECT_EQ(rtl(idx, arc_of(idx, 2, 'n')), to_word(std::string("\0an", 3)));
  std::uint64_t emitted = 0;
  EXPECT_EQ(extract_arc_label(idx, arc_of(idx, 0, 'b'), [&](symbol_t) { ++emitted; }), 7u);
  EXPECT_EQ(emitted, 7u);
  EXPECT_THROW(arc_label(idx, 99), std::out_of_range);
}

TEST(LongestPrefixVsArc, Examples) {
  const Index& idx = banana();
  EXPECT_EQ(longest_prefix_vs_arc(idx, arc_of(idx, 2, 'n'), to_word("nax")), 2u);
  EXPECT_EQ(longest_prefix_vs_arc(idx, arc_of(idx, 2, 'n'), to_word("")), 0u);
  EXPECT_EQ(longest_prefix_vs_arc(idx, arc_of(idx, 0, 'b'), to_word(std::string("banana\0zzz", 10))), 7u);
  EXPECT_EQ(longest_prefix_vs_arc(idx, arc_of(idx, 0, 'b'), to_word("bx")), 1u);
  EXPECT_EQ(longest_prefix_vs_arc(idx, arc_of(idx, 0, 'b'), to_word("x")), 0u);
}

TEST(MatchingStatistics, Examples) {
  const Index& idx = banana();
  EXPECT_EQ(matching_statistics(idx, P("nanba")), (U32{3, 2, 1, 2, 1}));
  EXPECT_EQ(matching_statistics(idx, P("qxz")), (U32{0, 0, 0}));
  EXPECT_EQ(matching_statistics(idx, P("banana")), (U32{6, 5, 4, 3, 2, 1}));
  EXPECT_TRUE(matching_statistics(idx, P("")).empty());
}

TEST(TopK, Examples) {
  const Index& idx = banana();
  EXPECT_EQ(top_k(idx, P("a"), 3, Order::lex), (U64{6, 4, 2}));
  EXPECT_EQ(top_k(idx, P("a"), 1, Order::lex), (U64{6}));
  EXPECT_EQ(top_k(idx, P("a"), 3, Order::freq), (U64{4, 2, 6}));
  EXPECT_TRUE(top_k(idx, P("x"), 3, Order::lex).empty());
  EXPECT_EQ(top_k(idx, P(""), 10, Order::lex), (U64{7, 6, 4, 2, 1, 5, 3}));
  EXPECT_EQ(top_k(idx, P(""), 10, Order::freq), (U64{4, 2, 6, 5, 3, 7, 1}));
  EXPECT_EQ(top_k(idx, P("nan"), 5, Order::lex), (U64{3}));
  EXPECT_TRUE(top_k(idx, P("a"), 0, Order::lex).empty());

  const auto m = build_index(Text::from_string("mississippi"));
  EXPECT_EQ(top_k(m, P("i"), 10, Order::lex), (U64{11, 8, 5, 2}));
  EXPECT_EQ(top_k(m, P("i"), 10, Order::freq), (U64{5, 2, 11, 8}));
  EXPECT_EQ(top_k(m, P("s"), 10, Order::lex), (U64{7, 4, 6, 3}));
  EXPECT_EQ(top_k(m, P("s"), 10, Order::freq), (U64{7, 4, 6, 3}));
}

TEST(MinimalAbsentWords, Examples) {
  EXPECT_EQ(minimal_absent_words(banana()), words({"aa", "ab", "bb", "bn", "nanan", "nb", "nn"}));
  EXPECT_EQ(minimal_absent_words(build_index(Text::from_string("ab"))), words({"aa", "ba", "bb"}));
  EXPECT_EQ(minimal_absent_words(build_index(Text::from_string("a"))), words({"aa"}));
  const auto all = minimal_absent_words(banana(), true);
  EXPECT_TRUE(std::is_sorted(all.begin(), all.end()));
  EXPECT_EQ(std::adjacent_find(all.begin(), all.end()), all.end());
  EXPECT_TRUE(std::binary_search(all.begin(), all.end(), to_word(std::string("\0\0", 2))));
}

TEST(Reconstruct, SmallTexts) {
  EXPECT_EQ(reconstruct_text(banana()), to_word(std::string("banana\0", 7)));
  EXPECT_EQ(reconstruct_text(build_index(Text::from_string("a"))), to_word(std::string("a\0", 2)));
}

TEST(Reconstruct, LargeRepetitiveText) {
  std::string s;
  std::mt19937_64 rng(51);
  const std::string block = fixtures::random_text(rng, 4096, 16);
  while (s.size() < (1u << 20)) {
    std::string copy = block;
    copy[rng() % copy.size()] = static_cast<char>('a' + rng() % 16);
    s += copy;
  }
  const auto idx = build_index(Text::from_string(s));
  const Word back = reconstruct_text(idx);
  ASSERT_EQ(back.size(), s.size() + 1);
  EXPECT_TRUE(std::equal(s.begin(), s.end(), back.begin(), [](char a, symbol_t b) {
    return static_cast<symbol_t>(a) == b;
  }));
}

class QueryOracle : public ::testing::TestWithParam<int> {};

TEST_P(QueryOracle, AllQueriesMatch) {
  std::mt19937_64 rng(3000 + GetParam());
  static constexpr unsigned kSigmas[] = {2, 4, 16};
  const std::string s = GetParam() < 8 ? fixtures::repetitive_family(GetParam())
                                       : fixtures::random_text(rng, 1 + rng() % 300, kSigmas[GetParam() % 3]);
  const auto t = Text::from_string(s);
  const auto idx = build_index(t);
  ASSERT_EQ(to_string(reconstruct_text(idx)), s + std::string(1, '\0'));

  const auto b = build_suffix_array(t);
  for (const auto& p : fixtures::sample_patterns(rng, s, 150, 12)) {
    const auto pat = P(p);
    const auto occ = oracle::occurrences(t, pat);
    ASSERT_EQ(count(idx, pat), occ.size()) << p;
    ASSERT_EQ(locate(idx, pat), occ) << p;
    if (p.empty() || occ.empty()) continue;
    // Lex order follows suffix rank; freq order is a permutation.
    const auto lex = top_k(idx, pat, occ.size() + 1, Order::lex);
    ASSERT_EQ(lex.size(), occ.size());
    for (std::size_t k = 1; k < lex.size(); ++k) EXPECT_LT(b.isa[lex[k - 1] - 1], b.isa[lex[k] - 1]);
    auto freq = top_k(idx, pat, occ.size(), Order::freq);
    std::sort(freq.begin(), freq.end());
    EXPECT_EQ(freq, occ);
    const std::uint64_t k = 1 + rng() % occ.size();
    EXPECT_EQ(top_k(idx, pat, k, Order::lex), U64(lex.begin(), lex.begin() + k));
  }

  for (int q = 0; q < 10; ++q) {
    std::string query = q == 0 ? s : fixtures::random_text(rng, rng() % 64, kSigmas[q % 3]);
    if (q == 1) query = s.substr(rng() % s.size()) + fixtures::random_text(rng, 8, 2) + s;
    const auto ms = matching_statistics(idx, P(query));
    ASSERT_EQ(ms, oracle::matching_statistics(t, P(query))) << query;
    for (std::size_t i = 1; i < ms.size(); ++i) EXPECT_GE(ms[i] + 1, ms[i - 1]);
  }

  for (std::uint32_t a = 0; a < idx.cdawg.arc_count(); ++a) {
    const Word w = arc_label(idx, a);
    ASSERT_EQ(w.size(), idx.cdawg.arcs[a].right);
    ASSERT_EQ(w.front(), idx.cdawg.arcs[a].ch);
    Word r = rtl(idx, a);
    std::reverse(r.begin(), r.end());
    ASSERT_EQ(r, w);
    EXPECT_EQ(longest_prefix_vs_arc(idx, a, w), w.size());
    Word probe = w;
    const std::size_t cut = rng() % probe.size();
    probe[cut] = static_cast<symbol_t>(probe[cut] == 'z' ? 'y' : 'z');
    EXPECT_EQ(longest_prefix_vs_arc(idx, a, probe), cut);
  }

  if (t.size() <= 200) {
    std::size_t mu = 0;
    for (const auto& w : oracle::maximal_repeats(t)) mu = std::max(mu, w.size());
    EXPECT_EQ(minimal_absent_words(idx, true), oracle::minimal_absent_words(t, mu + 2, true));
    EXPECT_EQ(minimal_absent_words(idx, false), oracle::minimal_absent_words(t, mu + 2, false));
  }
}

INSTANTIATE_TEST_SUITE_P(Corpus, QueryOracle, ::testing::Range(0, 60));
