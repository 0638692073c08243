#pragma once

// Brute-force reference implementations. Quadratic or worse; meant for
// texts of at most a few thousand symbols.

#include <algorithm>
#include <bitset>
#include <cstdint>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "cdawg/text.hpp"

namespace cdawg::oracle {

namespace detail {

inline std::string_view view(std::span<const symbol_t> s, std::size_t from, std::size_t len) {
  return {reinterpret_cast<const char*>(s.data()) + from, len};
}

// Index 256 stands for "no symbol before position 1".
inline constexpr std::size_t kVirtual = 256;
using ExtSet = std::bitset<257>;

}  // namespace detail

/// 1-based starting positions of p in t, ascending. The empty pattern
/// occurs at 1..n+1.
inline std::vector<std::uint64_t> occurrences(const Text& t, const Pattern& p) {
  std::vector<std::uint64_t> out;
  const std::size_t n = t.size();
  if (p.empty()) {
    for (std::uint64_t i = 1; i <= n + 1; ++i) out.push_back(i);
    return out;
  }
  auto hay = detail::view(t.symbols(), 0, n);
  auto needle = detail::view(p.symbols(), 0, p.size());
  for (auto at = hay.find(needle); at != std::string_view::npos; at = hay.find(needle, at + 1)) {
    out.push_back(at + 1);
  }
  return out;
}

/// Every maximal repeat of t (the empty string included), sorted.
inline std::vector<Word> maximal_repeats(const Text& t) {
  struct Stats {
    std::uint32_t count = 0;
    detail::ExtSet left, right;
  };
  const auto sym = t.symbols();
  const std::size_t n = t.size();
  std::vector<Word> out{Word{}};
  for (std::size_t len = 1; len < n; ++len) {
    std::unordered_map<std::string_view, Stats> table;
    for (std::size_t i = 0; i + len <= n; ++i) {
      auto& st = table[detail::view(sym, i, len)];
      ++st.count;
      st.left.set(i == 0 ? detail::kVirtual : sym[i - 1]);
      if (i + len < n) st.right.set(sym[i + len]);
    }
    bool any_repeat = false;
    for (const auto& [key, st] : table) {
      if (st.count < 2) continue;
      any_repeat = true;
      if (st.left.count() > 1 && st.right.count() > 1) {
        out.emplace_back(reinterpret_cast<const symbol_t*>(key.data()), key.size());
      }
    }
    if (!any_repeat) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// MS[i] = length of the longest prefix of s[i..] that occurs in t.
inline std::vector<std::uint32_t> matching_statistics(const Text& t, const Pattern& s) {
  const std::size_t n = t.size();
  const std::size_t m = s.size();
  std::vector<std::uint32_t> ms(m, 0);
  // run[p] = common prefix length of s[i..] and t[p..], rolled from the right.
  std::vector<std::uint32_t> run(n + 1, 0), next(n + 1, 0);
  for (std::size_t i = m; i-- > 0;) {
    std::uint32_t best = 0;
    for (std::size_t p = 0; p < n; ++p) {
      next[p] = (s[i] == t[p]) ? run[p + 1] + 1 : 0;
      best = std::max(best, next[p]);
    }
    next[n] = 0;
    std::swap(run, next);
    ms[i] = best;
  }
  return ms;
}

/// Minimal absent words of length <= maxlen, sorted. Candidates are aVb
/// with V a substring of t and a, b symbols of t (the sentinel included).
/// Words holding the sentinel are dropped unless include_sentinel is set.
inline std::vector<Word> minimal_absent_words(const Text& t, std::size_t maxlen,
                                              bool include_sentinel) {
  struct Stats {
    std::uint32_t count = 0;
    detail::ExtSet left, right;
    std::vector<std::uint16_t> pairs;
  };
  const auto sym = t.symbols();
  const std::size_t n = t.size();
  std::vector<Word> out;
  if (maxlen < 2) return out;
  for (std::size_t len = 0; len + 2 <= maxlen && len < n; ++len) {
    std::unordered_map<std::string_view, Stats> table;
    const std::size_t last_start = (len == 0) ? n : n - len;
    for (std::size_t i = 0; i <= last_start; ++i) {
      auto& st = table[detail::view(sym, i, len)];
      ++st.count;
      const bool has_left = i > 0;
      const bool has_right = i + len < n;
      if (has_left) st.left.set(sym[i - 1]);
      if (has_right) st.right.set(sym[i + len]);
      if (has_left && has_right) {
        st.pairs.push_back(static_cast<std::uint16_t>(sym[i - 1] << 8 | sym[i + len]));
      }
    }
    bool any_repeat = false;
    for (auto& [key, st] : table) {
      if (st.count < 2) continue;
      any_repeat = true;
      std::sort(st.pairs.begin(), st.pairs.end());
      for (unsigned a = 0; a < 256; ++a) {
        if (!st.left.test(a)) continue;
        for (unsigned b = 0; b < 256; ++b) {
          if (!st.right.test(b)) continue;
          if (!include_sentinel && (a == kSentinel || b == kSentinel)) continue;
          auto code = static_cast<std::uint16_t>(a << 8 | b);
          if (std::binary_search(st.pairs.begin(), st.pairs.end(), code)) continue;
          Word w;
          w.push_back(static_cast<symbol_t>(a));
          w.append(reinterpret_cast<const symbol_t*>(key.data()), key.size());
          w.push_back(static_cast<symbol_t>(b));
          out.push_back(std::move(w));
        }
      }
    }
    if (!any_repeat) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace cdawg::oracle
