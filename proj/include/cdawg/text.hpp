#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cdawg {

using symbol_t = std::uint8_t;

inline constexpr symbol_t kSentinel = 0;

class invalid_input : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Indexed sequence over [1..sigma] terminated by the sentinel 0.
///
/// The sentinel is appended here, never supplied by the caller, so every
/// suffix of the text is distinct and the last symbol is the only 0.
class Text {
 public:
  Text() = default;

  static Text from_bytes(std::span<const symbol_t> raw) {
    if (raw.empty()) {
      throw invalid_input("text must contain at least one symbol");
    }
    Text t;
    t.bytes_.reserve(raw.size() + 1);
    std::array<bool, 256> seen{};
    for (symbol_t c : raw) {
      if (c == kSentinel) {
        throw invalid_input("text contains the reserved byte 0");
      }
      t.sigma_ += !seen[c];
      seen[c] = true;
      t.bytes_.push_back(c);
    }
    t.bytes_.push_back(kSentinel);
    return t;
  }

  static Text from_string(std::string_view s) {
    return from_bytes({reinterpret_cast<const symbol_t*>(s.data()), s.size()});
  }

  /// n, including the sentinel.
  std::size_t size() const { return bytes_.size(); }
  /// Distinct symbols, the sentinel excluded.
  unsigned sigma() const { return sigma_; }

  symbol_t operator[](std::size_t i) const { return bytes_[i]; }
  std::span<const symbol_t> symbols() const { return bytes_; }
  /// Text without the sentinel.
  std::span<const symbol_t> body() const {
    return std::span<const symbol_t>(bytes_).first(bytes_.size() - 1);
  }

 private:
  std::vector<symbol_t> bytes_;
  unsigned sigma_ = 0;
};

/// Query string; never contains the sentinel.
class Pattern {
 public:
  Pattern() = default;

  static Pattern from_bytes(std::span<const symbol_t> raw) {
    Pattern p;
    for (symbol_t c : raw) {
      if (c == kSentinel) {
        throw invalid_input("pattern contains the reserved byte 0");
      }
    }
    p.bytes_.assign(raw.begin(), raw.end());
    return p;
  }

  /// No sentinel check, for whole suffixes and other sentinel-terminated
  /// probes. The user-facing paths go through from_bytes.
  static Pattern with_sentinel(std::span<const symbol_t> raw) {
    Pattern p;
    p.bytes_.assign(raw.begin(), raw.end());
    return p;
  }

  static Pattern from_string(std::string_view s) {
    return from_bytes({reinterpret_cast<const symbol_t*>(s.data()), s.size()});
  }

  std::size_t size() const { return bytes_.size(); }
  bool empty() const { return bytes_.empty(); }
  symbol_t operator[](std::size_t i) const { return bytes_[i]; }
  std::span<const symbol_t> symbols() const { return bytes_; }

 private:
  std::vector<symbol_t> bytes_;
};

/// Byte string used for labels and minimal absent words. May hold the sentinel.
using Word = std::basic_string<symbol_t>;

inline Word to_word(std::string_view s) {
  return Word(reinterpret_cast<const symbol_t*>(s.data()), s.size());
}

inline std::string to_string(const Word& w) {
  return std::string(reinterpret_cast<const char*>(w.data()), w.size());
}

}  // namespace cdawg
