#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "cdawg/index.hpp"
#include "cdawg/op_counter.hpp"
#include "cdawg/ordered_dag.hpp"
#include "cdawg/text.hpp"

namespace cdawg {

/// Outcome of a blind search. When `found`, the pattern can only occur as
/// label(node)[begin .. begin + length); `verified` says it does. A walk
/// that ends on a sink arc reports the sink, whose label is the text.
struct MatchResult {
  bool found = false;
  bool verified = false;
  std::uint32_t node = kNone;
  std::uint32_t arc = kNone;   // last arc taken
  std::uint32_t slot = kNone;  // in-arc slot of `node` that holds `begin`
  std::uint64_t begin = 0;
  std::uint64_t length = 0;
  std::uint64_t matched = 0;  // symbols spelled by the arcs taken
  std::uint64_t count = 0;    // occurrences if verified, else 0
};

/// Symbol-at-a-time expansion of one grammar symbol.
class CharIterator {
 public:
  CharIterator() = default;
  CharIterator(const OrderedDag& g, std::uint32_t symbol, OpCounter* ops = nullptr)
      : cur_(g, symbol, 0, ops) {}

  std::optional<symbol_t> next() {
    auto item = cur_.next();
    if (!item) return std::nullopt;
    return item->symbol;
  }
  std::size_t frames() const { return cur_.frames(); }

 private:
  PathCursor cur_;
};

inline CharIterator char_iterator(const Slp& g, std::uint32_t symbol, OpCounter* ops = nullptr) {
  return CharIterator(g.fwd, symbol, ops);
}

/// Arc label symbols from last to first.
class ReverseLabelCursor {
 public:
  ReverseLabelCursor() = default;
  ReverseLabelCursor(const OrderedDag& rev, std::uint32_t symbol, std::uint64_t count,
                     OpCounter* ops)
      : cur_(rev, symbol, 0, ops), left_(count) {}

  std::optional<symbol_t> next() {
    if (left_ == 0) return std::nullopt;
    --left_;
    return cur_.next()->symbol;
  }
  std::uint64_t remaining() const { return left_; }
  std::size_t frames() const { return cur_.frames(); }

 private:
  PathCursor cur_;
  std::uint64_t left_ = 0;
};

namespace detail {

/// Emits label(y)[o .. o + len) until `emit` returns false; returns the
/// number of symbols accepted. `slot`, when known, is the in-arc slot of y
/// that holds offset o. A slot entered at its start is expanded forward; a
/// slot entered in the middle and left at its end is read backwards through
/// the mirrored grammar; any other piece recurses into the slot's node.
template <class Emit>
std::uint64_t read_label(const Index& idx, std::uint32_t y, std::uint64_t o, std::uint32_t slot,
                         std::uint64_t len, Emit& emit, OpCounter* ops) {
  const Cdawg& c = idx.cdawg;
  const Slp& g = idx.slp;
  std::uint64_t done = 0;
  std::vector<symbol_t> buf;
  auto forward = [&](std::uint32_t sym, std::uint64_t take) {
    PathCursor cur(g.fwd, sym, 0, ops);
    for (std::uint64_t k = 0; k < take; ++k) {
      if (!emit(cur.next()->symbol)) return false;
      ++done;
    }
    return true;
  };
  while (done < len) {
    if (y == c.source) throw std::out_of_range("label read past its end");
    const CdawgNode& node = c.nodes[y];
    if (o >= node.pi_length) {
      o -= node.pi_length;
      y = node.suffix_pointer;
      slot = kNone;
      detail::tick(ops);
      if (o == 0 && y != c.source) {
        forward(g.l[y], len - done);
        return done;
      }
      continue;
    }
    if (slot == kNone) slot = c.slot_at(y, static_cast<std::uint32_t>(o));
    const std::uint32_t arc = c.in_arcs[node.in_begin + slot];
    const std::uint32_t sym = g.slot_symbol(c, arc);
    const std::uint64_t r = o - c.in_offset[node.in_begin + slot];
    const std::uint64_t rest = g.fwd.size[sym] - r;
    const std::uint64_t take = std::min(len - done, rest);
    if (r == 0) {
      if (!forward(sym, take)) return done;
    } else if (take == rest) {
      buf.clear();
      PathCursor cur(g.rev, sym, 0, ops);
      for (std::uint64_t k = 0; k < take; ++k) buf.push_back(cur.next()->symbol);
      for (auto it = buf.rbegin(); it != buf.rend(); ++it) {
        if (!emit(*it)) return done;
        ++done;
      }
    } else {
      const std::uint64_t got = read_label(idx, c.arcs[arc].from, r, kNone, take, emit, ops);
      done += got;
      if (got < take) return done;
    }
    o += take;
    ++slot;
  }
  return done;
}

}  // namespace detail

/// Walks arcs by their first symbol only. Makes no claim that p occurs.
inline MatchResult blind_search(const Index& idx, const Pattern& p, OpCounter* ops = nullptr) {
  const Cdawg& c = idx.cdawg;
  MatchResult r;
  r.length = p.size();
  if (p.empty()) {
    r.found = r.verified = true;
    r.node = c.source;
    r.count = static_cast<std::uint64_t>(c.n) + 1;
    return r;
  }
  std::uint32_t x = c.source, slot = kNone, last = kNone;
  std::uint64_t o = 0, matched = 0;
  while (matched < p.size()) {
    const std::uint32_t a = c.child(x, p[matched]);
    detail::tick(ops);
    if (a == kNone) return r;
    const CdawgArc& arc = c.arcs[a];
    o += arc.offset;
    slot = arc.nonterminal_ref;
    matched += arc.right;
    x = arc.to;
    last = a;
  }
  r.found = true;
  r.node = x;
  r.arc = last;
  r.slot = slot;
  r.begin = o;
  r.matched = matched;
  return r;
}

/// Blind search followed by reading the candidate occurrence back.
inline MatchResult search(const Index& idx, const Pattern& p, OpCounter* ops = nullptr) {
  MatchResult r = blind_search(idx, p, ops);
  if (!r.found || p.empty()) return r;
  const auto sym = p.symbols();
  std::uint64_t k = 0;
  auto cmp = [&](symbol_t ch) {
    if (ch != sym[k]) return false;
    ++k;
    return true;
  };
  detail::read_label(idx, r.node, r.begin, r.slot, p.size(), cmp, ops);
  r.verified = k == p.size();
  if (r.verified) r.count = r.node == idx.cdawg.sink ? 1 : idx.cdawg.nodes[r.node].freq;
  return r;
}

inline std::uint64_t count(const Index& idx, const Pattern& p, OpCounter* ops = nullptr) {
  return search(idx, p, ops).count;
}

/// 1-based starting positions of p, ascending. The empty pattern occurs at
/// 1..n+1.
inline std::vector<std::uint64_t> locate(const Index& idx, const Pattern& p,
                                         OpCounter* ops = nullptr) {
  const Cdawg& c = idx.cdawg;
  std::vector<std::uint64_t> out;
  if (p.empty()) {
    for (std::uint64_t i = 1; i <= static_cast<std::uint64_t>(c.n) + 1; ++i) out.push_back(i);
    return out;
  }
  const MatchResult r = search(idx, p, ops);
  if (!r.verified) return out;
  if (r.node == c.sink) {
    out.push_back(r.begin + 1);
    return out;
  }
  out.reserve(r.count);
  std::vector<std::pair<std::uint32_t, std::uint64_t>> stack{{r.node, r.begin}};
  detail::tick(ops);
  while (!stack.empty()) {
    const auto [v, at] = stack.back();
    stack.pop_back();
    detail::tick(ops);
    for (std::uint32_t a = c.nodes[v].out_begin; a < c.nodes[v].out_end; ++a) {
      const CdawgArc& arc = c.arcs[a];
      detail::tick(ops, 2);  // arc, then push or emit
      if (arc.to == c.sink) {
        out.push_back(at + arc.offset + 1);
      } else {
        stack.emplace_back(arc.to, at + arc.offset);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Emits the label of arc a left to right; returns its length.
template <class Emit>
std::uint64_t extract_arc_label(const Index& idx, std::uint32_t a, Emit&& emit,
                                OpCounter* ops = nullptr) {
  const Cdawg& c = idx.cdawg;
  const CdawgArc& arc = c.arcs.at(a);
  const std::uint32_t owner = arc.label_owner;
  auto accept = [&](symbol_t ch) {
    emit(ch);
    return true;
  };
  return detail::read_label(idx, owner, c.nodes[owner].length - arc.right, arc.label_run,
                            arc.right, accept, ops);
}

inline Word arc_label(const Index& idx, std::uint32_t a, OpCounter* ops = nullptr) {
  Word w;
  extract_arc_label(idx, a, [&](symbol_t ch) { w.push_back(ch); }, ops);
  return w;
}

/// The label of arc a read right to left. It is the suffix of the owner's
/// label, so the owner's full-label symbol is expanded in the mirrored
/// grammar and cut after right(a) symbols.
inline ReverseLabelCursor extract_arc_label_rtl(const Index& idx, std::uint32_t a,
                                                OpCounter* ops = nullptr) {
  const CdawgArc& arc = idx.cdawg.arcs.at(a);
  return ReverseLabelCursor(idx.slp.rev, idx.slp.l[arc.label_owner], arc.right, ops);
}

/// Longest prefix of s that is a prefix of the label of arc a, by doubling
/// the probe length and walking from the source while tracking the interval
/// of each suffix-tree node met.
inline std::uint64_t longest_prefix_vs_arc(const Index& idx, std::uint32_t a,
                                           std::span<const symbol_t> s, OpCounter* ops = nullptr) {
  const Cdawg& c = idx.cdawg;
  const CdawgArc& target_arc = c.arcs.at(a);
  const std::uint64_t cap = std::min<std::uint64_t>(s.size(), target_arc.right);
  if (cap == 0) return 0;
  const Interval target = target_arc.label_interval;
  for (std::uint64_t len = 1;; len = std::min(cap, 2 * len)) {
    std::uint32_t x = c.source, slot = kNone;
    std::uint64_t o = 0, matched = 0;
    std::int64_t shift = 0;  // interval start of the member minus that of its class head
    bool stopped = false;
    while (matched < len) {
      const std::uint32_t b = c.child(x, s[matched]);
      detail::tick(ops);
      if (b == kNone) {
        stopped = true;
        break;
      }
      const CdawgArc& step = c.arcs[b];
      const Interval j{static_cast<std::uint32_t>(step.extension_interval.sp + shift),
                       static_cast<std::uint32_t>(step.extension_interval.ep + shift)};
      if (!j.contains(target)) {
        stopped = true;
        break;
      }
      x = step.to;
      o += step.offset;
      slot = step.nonterminal_ref;
      matched += step.right;
      shift = static_cast<std::int64_t>(j.sp) - c.nodes[x].interval.sp;
    }
    const std::uint64_t known = stopped ? matched : len;
    std::uint64_t agree = 0;
    auto cmp = [&](symbol_t ch) {
      if (ch != s[agree]) return false;
      ++agree;
      return true;
    };
    if (known > 0) detail::read_label(idx, x, o, slot, known, cmp, ops);
    if (agree < known || stopped || len == cap) return agree;
  }
}

/// MS[i] = length of the longest prefix of s[i..] that occurs in the text.
inline std::vector<std::uint32_t> matching_statistics(const Index& idx, const Pattern& s,
                                                      OpCounter* ops = nullptr) {
  const Cdawg& c = idx.cdawg;
  const auto S = s.symbols();
  const std::uint64_t m = S.size();
  std::vector<std::uint32_t> ms(m, 0);
  if (m == 0) return ms;

  // The current match U = S[i .. i + len) is label(a)[o..] followed by the
  // first xlen symbols of the label of an arc out of a (xlen = 0 when U is
  // a node).
  std::uint32_t a = c.source;
  std::uint64_t o = 0, xlen = 0, len = 0;

  auto extend = [&](std::uint64_t i) {
    while (xlen == 0 && i + len < m) {
      const std::uint32_t g = c.child(a, S[i + len]);
      detail::tick(ops);
      if (g == kNone) return;
      const std::uint64_t k = longest_prefix_vs_arc(idx, g, S.subspan(i + len), ops);
      len += k;
      if (k < c.arcs[g].right) {
        xlen = k;
        return;
      }
      o += c.arcs[g].offset;
      a = c.arcs[g].to;
    }
  };

  extend(0);
  ms[0] = static_cast<std::uint32_t>(len);
  for (std::uint64_t i = 1; i < m; ++i) {
    if (len == 0) {
      a = c.source;
      o = xlen = 0;
      extend(i);
    } else if (i - 1 + len == m) {
      --len;  // the match already reaches the end of s
    } else if (a != c.source && o + 1 < c.nodes[a].class_size) {
      // Still inside the class of a, whose members share right contexts.
      ++o;
      --len;
    } else {
      std::uint64_t from = i - 1 + len - xlen, count = xlen;
      if (a == c.source) {
        ++from;
        --count;
      } else {
        a = c.nodes[a].suffix_pointer;
        detail::tick(ops);
      }
      --len;
      o = 0;
      xlen = 0;
      const std::uint64_t end = from + count;
      while (from < end) {
        const std::uint32_t g = c.child(a, S[from]);
        detail::tick(ops);
        if (g == kNone) throw std::logic_error("matched substring left the CDAWG");
        const CdawgArc& step = c.arcs[g];
        if (step.right > end - from) {
          xlen = end - from;
          break;
        }
        a = step.to;
        o += step.offset;
        from += step.right;
      }
      if (xlen == 0) extend(i);
    }
    ms[i] = static_cast<std::uint32_t>(len);
  }
  return ms;
}

/// First k occurrences of p as 1-based positions, in the order of the
/// chosen view: suffix order for lex, most frequent continuation first for
/// freq. The empty pattern enumerates the n suffixes.
inline std::vector<std::uint64_t> top_k(const Index& idx, const Pattern& p, std::uint64_t k,
                                        Order order, OpCounter* ops = nullptr) {
  const Cdawg& c = idx.cdawg;
  std::vector<std::uint64_t> out;
  if (k == 0) return out;
  std::uint32_t node = c.source;
  std::uint64_t begin = 0;
  if (!p.empty()) {
    const MatchResult r = search(idx, p, ops);
    if (!r.verified) return out;
    if (r.node == c.sink) {
      out.push_back(r.begin + 1);
      return out;
    }
    node = r.node;
    begin = r.begin;
  }
  PathCursor cur(idx.view(order), node, begin, ops);
  while (out.size() < k) {
    auto item = cur.next();
    if (!item) break;
    out.push_back(item->weight + 1);
  }
  return out;
}

/// Minimal absent words aVb, V a maximal repeat, sorted. Words that hold
/// the sentinel are dropped unless include_sentinel is set.
inline std::vector<Word> minimal_absent_words(const Index& idx, bool include_sentinel = false) {
  const Cdawg& c = idx.cdawg;
  std::vector<Word> out;
  Word label;
  for (std::uint32_t v = 0; v < c.node_count(); ++v) {
    if (v == c.sink) continue;
    label.clear();
    if (v != c.source) {
      extract_prefix(idx.slp.fwd, idx.slp.l[v], c.nodes[v].length,
                     [&](symbol_t ch) { label.push_back(ch); });
    }
    const auto left = c.left_extensions(v);
    for (std::uint32_t g = c.nodes[v].out_begin; g < c.nodes[v].out_end; ++g) {
      const CdawgArc& arc = c.arcs[g];
      if (!include_sentinel && arc.ch == kSentinel) continue;
      auto push = [&](symbol_t x) {
        if (!include_sentinel && x == kSentinel) return;
        Word w;
        w.reserve(label.size() + 2);
        w.push_back(x);
        w += label;
        w.push_back(arc.ch);
        out.push_back(std::move(w));
      };
      if (arc.order > 1) {
        for (symbol_t x : left) {
          if (x != arc.previous_char) push(x);
        }
      } else {
        const auto blocked = c.left_extensions(arc.to);
        std::size_t j = 0;
        for (symbol_t x : left) {
          while (j < blocked.size() && blocked[j] < x) ++j;
          if (j < blocked.size() && blocked[j] == x) continue;
          push(x);
        }
      }
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// Expands the grammar start symbol: the text, sentinel included.
template <class Emit>
std::uint64_t reconstruct_text(const Index& idx, Emit&& emit, OpCounter* ops = nullptr) {
  return extract_prefix(idx.slp.fwd, idx.slp.start, idx.cdawg.n, emit, ops);
}

inline Word reconstruct_text(const Index& idx) {
  Word w;
  w.reserve(idx.cdawg.n);
  reconstruct_text(idx, [&](symbol_t ch) { w.push_back(ch); });
  return w;
}

}  // namespace cdawg
