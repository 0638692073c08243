#pragma once

#include <algorithm>
#include <cstdint>

namespace cdawg {

/// Work meter for queries. Stack pushes and pops, arc traversals, emitted
/// characters and level-ancestor queries each cost one unit. Queries take
/// an optional pointer; null disables metering.
struct OpCounter {
  std::uint64_t ops = 0;
  std::uint64_t peak_frames = 0;

  void reset() { *this = {}; }
};

namespace detail {

inline void tick(OpCounter* c, std::uint64_t n = 1) {
  if (c) c->ops += n;
}

inline void frames(OpCounter* c, std::uint64_t depth) {
  if (c) c->peak_frames = std::max(c->peak_frames, depth);
}

}  // namespace detail

}  // namespace cdawg
