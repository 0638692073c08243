#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

#include "cdawg/text.hpp"

namespace cdawg {

/// Suffix array, inverse, LCP and BWT of a Text. Positions and ranks are
/// 0-based. lcp[r] is the common prefix length of suffixes sa[r-1] and
/// sa[r]; lcp[0] is 0. bwt[r] = t[sa[r]-1], or the sentinel when sa[r] = 0.
struct SuffixArrayBundle {
  std::vector<std::uint32_t> sa;
  std::vector<std::uint32_t> isa;
  std::vector<std::uint32_t> lcp;
  std::vector<symbol_t> bwt;

  std::size_t size() const { return sa.size(); }
};

namespace detail {

// Prefix doubling; each round is a two-pass counting sort on rank pairs.
inline std::vector<std::uint32_t> suffix_sort(std::span<const symbol_t> t) {
  const std::uint32_t n = static_cast<std::uint32_t>(t.size());
  std::vector<std::uint32_t> sa(n), rank(n), tmp(n), count(std::max<std::uint32_t>(n, 256) + 1);

  for (std::uint32_t i = 0; i < n; ++i) ++count[t[i] + 1];
  std::partial_sum(count.begin(), count.begin() + 257, count.begin());
  for (std::uint32_t i = 0; i < n; ++i) sa[count[t[i]]++] = i;
  std::uint32_t classes = 0;
  for (std::uint32_t r = 0; r < n; ++r) {
    if (r > 0 && t[sa[r]] != t[sa[r - 1]]) ++classes;
    rank[sa[r]] = classes;
  }
  ++classes;

  for (std::uint32_t k = 1; classes < n; k <<= 1) {
    // Order by second key: suffixes shorter than k first, then by sa.
    std::uint32_t w = 0;
    for (std::uint32_t i = n - std::min(k, n); i < n; ++i) tmp[w++] = i;
    for (std::uint32_t r = 0; r < n; ++r) {
      if (sa[r] >= k) tmp[w++] = sa[r] - k;
    }
    // Stable counting sort by first key.
    std::fill(count.begin(), count.begin() + classes + 1, 0);
    for (std::uint32_t i = 0; i < n; ++i) ++count[rank[i] + 1];
    std::partial_sum(count.begin(), count.begin() + classes + 1, count.begin());
    for (std::uint32_t r = 0; r < n; ++r) sa[count[rank[tmp[r]]]++] = tmp[r];

    auto second = [&](std::uint32_t i) -> std::int64_t {
      return i + k < n ? static_cast<std::int64_t>(rank[i + k]) : -1;
    };
    tmp[sa[0]] = 0;
    std::uint32_t c = 0;
    for (std::uint32_t r = 1; r < n; ++r) {
      const std::uint32_t a = sa[r - 1], b = sa[r];
      if (rank[a] != rank[b] || second(a) != second(b)) ++c;
      tmp[b] = c;
    }
    rank.swap(tmp);
    classes = c + 1;
  }
  return sa;
}

}  // namespace detail

inline SuffixArrayBundle build_suffix_array(const Text& t) {
  const auto sym = t.symbols();
  const std::uint32_t n = static_cast<std::uint32_t>(sym.size());
  SuffixArrayBundle b;
  b.sa = detail::suffix_sort(sym);
  b.isa.resize(n);
  for (std::uint32_t r = 0; r < n; ++r) b.isa[b.sa[r]] = r;

  // Kasai et al.
  b.lcp.assign(n, 0);
  std::uint32_t h = 0;
  for (std::uint32_t i = 0; i < n; ++i) {
    const std::uint32_t r = b.isa[i];
    if (r == 0) {
      h = 0;
      continue;
    }
    const std::uint32_t j = b.sa[r - 1];
    while (i + h < n && j + h < n && sym[i + h] == sym[j + h]) ++h;
    b.lcp[r] = h;
    if (h > 0) --h;
  }

  b.bwt.resize(n);
  for (std::uint32_t r = 0; r < n; ++r) {
    b.bwt[r] = b.sa[r] == 0 ? kSentinel : sym[b.sa[r] - 1];
  }
  return b;
}

}  // namespace cdawg
