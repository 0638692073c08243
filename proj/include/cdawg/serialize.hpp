#pragma once

// Index file layout, all integers little-endian:
//   "CDWG" | u16 version | u64 body size | body | u64 FNV-1a of everything before it
// The body holds the header (n, sigma, node count, arc count, source, sink,
// h), the node and arc tables, the in-arc and left-extension lists, the
// grammar, and the two CDAWG views. Each vector is a u64 count followed by
// fixed-width elements. The child hash table is rebuilt on load.

#include <array>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "cdawg/index.hpp"

namespace cdawg {

inline constexpr std::uint16_t kFormatVersion = 1;

enum class format_errc { bad_magic, unsupported_version, checksum_mismatch, truncated, corrupt, io };

inline const char* to_string(format_errc e) {
  switch (e) {
    case format_errc::bad_magic: return "bad magic";
    case format_errc::unsupported_version: return "unsupported version";
    case format_errc::checksum_mismatch: return "checksum mismatch";
    case format_errc::truncated: return "truncated file";
    case format_errc::corrupt: return "corrupt index";
    case format_errc::io: return "i/o error";
  }
  return "unknown";
}

class format_error : public std::runtime_error {
 public:
  format_error(format_errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}
  format_errc code() const { return code_; }

 private:
  format_errc code_;
};

namespace detail {

inline std::uint64_t fnv1a(std::span<const std::uint8_t> bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (std::uint8_t b : bytes) {
    h ^= b;
    h *= 0x100000001b3ULL;
  }
  return h;
}

class Writer {
 public:
  std::vector<std::uint8_t> out;

  template <class T>
  void put(T v) {
    using U = std::make_unsigned_t<T>;
    U u = static_cast<U>(v);
    for (std::size_t i = 0; i < sizeof(T); ++i) {
      out.push_back(static_cast<std::uint8_t>(u & 0xff));
      if constexpr (sizeof(T) > 1) u >>= 8;
    }
  }
  template <class T>
  void put(const std::vector<T>& v) {
    put<std::uint64_t>(v.size());
    for (const T& x : v) put(x);
  }
  void put(const std::vector<bool>&) = delete;
  void put(Interval i) {
    put(i.sp);
    put(i.ep);
  }
};

class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> in) : in_(in) {}

  template <class T>
  T get() {
    if (in_.size() - at_ < sizeof(T)) throw format_error(format_errc::corrupt, "record overruns body");
    std::make_unsigned_t<T> u = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i) {
      u |= static_cast<std::make_unsigned_t<T>>(static_cast<std::make_unsigned_t<T>>(in_[at_ + i])
                                                << (8 * i));
    }
    at_ += sizeof(T);
    return static_cast<T>(u);
  }
  template <class T>
  void get(std::vector<T>& v) {
    const auto count = get<std::uint64_t>();
    if (count > (in_.size() - at_) / sizeof(T)) throw format_error(format_errc::corrupt, "vector overruns body");
    v.resize(count);
    for (auto& x : v) x = get<T>();
  }
  Interval interval() {
    Interval i;
    i.sp = get<std::uint32_t>();
    i.ep = get<std::uint32_t>();
    return i;
  }
  bool at_end() const { return at_ == in_.size(); }

 private:
  std::span<const std::uint8_t> in_;
  std::size_t at_ = 0;
};

inline void put_la(Writer& w, const LevelAncestor& la) {
  w.put(la.parent_);
  w.put(la.depth_);
  w.put(la.ladder_);
  w.put(la.ladder_begin_);
  w.put(la.ladder_of_);
  w.put(la.jump_begin_);
  w.put(la.jump_);
}

inline void get_la(Reader& r, LevelAncestor& la) {
  r.get(la.parent_);
  r.get(la.depth_);
  r.get(la.ladder_);
  r.get(la.ladder_begin_);
  r.get(la.ladder_of_);
  r.get(la.jump_begin_);
  r.get(la.jump_);
}

inline void put_dag(Writer& w, const OrderedDag& g) {
  w.put(g.child_begin);
  w.put(g.child);
  w.put(g.weight);
  w.put(g.label);
  w.put(g.size);
  w.put(g.wsum);
  w.put(g.height);
  put_la(w, g.tau);
}

inline void get_dag(Reader& r, OrderedDag& g) {
  r.get(g.child_begin);
  r.get(g.child);
  r.get(g.weight);
  r.get(g.label);
  r.get(g.size);
  r.get(g.wsum);
  r.get(g.height);
  get_la(r, g.tau);
}

inline void corrupt_unless(bool ok, const char* what) {
  if (!ok) throw format_error(format_errc::corrupt, what);
}

inline void check_csr(std::span<const std::uint32_t> begin, std::size_t rows, std::size_t total,
                      const char* what) {
  corrupt_unless(begin.size() == rows + 1 && begin.front() == 0 && begin.back() == total, what);
  for (std::size_t i = 0; i < rows; ++i) corrupt_unless(begin[i] <= begin[i + 1], what);
}

inline void check_la(const LevelAncestor& la, std::size_t n) {
  corrupt_unless(la.parent_.size() == n && la.depth_.size() == n && la.ladder_of_.size() == n,
                 "level-ancestor table sizes");
  for (std::uint32_t p : la.parent_) corrupt_unless(p == kNone || p < n, "tau parent");
  for (std::uint32_t v : la.ladder_) corrupt_unless(v < n, "ladder entry");
  corrupt_unless(!la.ladder_begin_.empty(), "ladder index");
  check_csr(la.ladder_begin_, la.ladder_begin_.size() - 1, la.ladder_.size(), "ladder index");
  for (std::uint32_t l : la.ladder_of_) corrupt_unless(l + 1 < la.ladder_begin_.size(), "ladder id");
  check_csr(la.jump_begin_, n, la.jump_.size(), "jump index");
  for (std::uint32_t v : la.jump_) corrupt_unless(v < n, "jump entry");
}

inline void check_dag(const OrderedDag& g) {
  const std::size_t n = g.label.size();
  check_csr(g.child_begin, n, g.child.size(), "dag children");
  for (std::uint32_t v : g.child) corrupt_unless(v < n, "dag child id");
  corrupt_unless(g.weight.empty() || g.weight.size() == g.child.size(), "dag weights");
  corrupt_unless(g.size.size() == n && g.wsum.size() == n && g.height.size() == n, "dag tables");
  check_la(g.tau, n);
}

inline void check_index(const Index& idx) {
  const Cdawg& c = idx.cdawg;
  const std::size_t nodes = c.nodes.size(), arcs = c.arcs.size();
  corrupt_unless(nodes >= 2 && c.source == 0 && c.sink == nodes - 1, "node count");
  for (const auto& v : c.nodes) {
    corrupt_unless(v.suffix_pointer == kNone || v.suffix_pointer < nodes, "suffix pointer");
    corrupt_unless(v.in_begin <= v.in_end && v.in_end <= c.in_arcs.size(), "in-arc range");
    corrupt_unless(v.out_begin <= v.out_end && v.out_end <= arcs, "out-arc range");
    corrupt_unless(v.lext_begin <= v.lext_end && v.lext_end <= c.left_ext.size(), "left-extension range");
    corrupt_unless(v.interval.sp <= v.interval.ep && v.interval.ep < c.n, "node interval");
  }
  for (const auto& a : c.arcs) {
    corrupt_unless(a.from < nodes && a.to < nodes && a.label_owner < nodes, "arc endpoint");
    corrupt_unless(a.label_run < c.nodes[a.label_owner].in_end - c.nodes[a.label_owner].in_begin,
                   "arc label slot");
  }
  corrupt_unless(c.in_offset.size() == c.in_arcs.size(), "in-arc offsets");
  for (std::uint32_t a : c.in_arcs) corrupt_unless(a < arcs, "in-arc id");

  const Slp& g = idx.slp;
  check_dag(g.fwd);
  check_dag(g.rev);
  corrupt_unless(g.fwd.label.size() == g.rev.label.size(), "mirrored grammar size");
  corrupt_unless(g.f.size() == nodes && g.l.size() == nodes, "grammar symbol tables");
  const std::size_t syms = g.fwd.label.size();
  for (std::uint32_t v = 0; v < nodes; ++v) {
    if (v == c.source) continue;
    corrupt_unless(g.f[v] < syms && g.l[v] < syms, "grammar symbol id");
  }
  for (std::uint32_t t : g.terminal) corrupt_unless(t == kNone || t < syms, "terminal id");
  for (const auto& a : c.arcs) {
    if (a.from == c.source) corrupt_unless(g.terminal[a.ch] != kNone, "missing terminal");
  }
  corrupt_unless(g.start == g.f[c.sink], "grammar start");
  check_dag(idx.lex_view);
  check_dag(idx.freq_view);
  corrupt_unless(idx.lex_view.label.size() == nodes && idx.freq_view.label.size() == nodes,
                 "view size");
}

}  // namespace detail

inline std::vector<std::uint8_t> serialize(const Index& idx) {
  const Cdawg& c = idx.cdawg;
  detail::Writer w;
  w.put(c.n);
  w.put(c.sigma);
  w.put(static_cast<std::uint32_t>(c.nodes.size()));
  w.put(static_cast<std::uint32_t>(c.arcs.size()));
  w.put(c.source);
  w.put(c.sink);
  w.put(c.h);
  for (const auto& v : c.nodes) {
    w.put(v.length);
    w.put(v.freq);
    w.put(v.suffix_pointer);
    w.put(v.interval);
    w.put(v.class_size);
    w.put(v.pi_length);
    w.put(v.in_begin);
    w.put(v.in_end);
    w.put(v.out_begin);
    w.put(v.out_end);
    w.put(v.lext_begin);
    w.put(v.lext_end);
  }
  for (const auto& a : c.arcs) {
    w.put(a.from);
    w.put(a.to);
    w.put(a.ch);
    w.put(a.right);
    w.put(a.pos);
    w.put(a.label_interval);
    w.put(a.extension_interval);
    w.put(a.order);
    w.put(a.previous_char);
    w.put(a.nonterminal_ref);
    w.put(a.offset);
    w.put(a.label_owner);
    w.put(a.label_run);
  }
  w.put(c.in_arcs);
  w.put(c.in_offset);
  w.put(c.left_ext);

  const Slp& g = idx.slp;
  for (std::uint32_t t : g.terminal) w.put(t);
  w.put(g.f);
  w.put(g.l);
  w.put(g.start);
  w.put(g.height);
  detail::put_dag(w, g.fwd);
  detail::put_dag(w, g.rev);
  detail::put_dag(w, idx.lex_view);
  detail::put_dag(w, idx.freq_view);

  std::vector<std::uint8_t> file{'C', 'D', 'W', 'G'};
  detail::Writer head;
  head.put(kFormatVersion);
  head.put(static_cast<std::uint64_t>(w.out.size()));
  file.insert(file.end(), head.out.begin(), head.out.end());
  file.insert(file.end(), w.out.begin(), w.out.end());
  detail::Writer tail;
  tail.put(detail::fnv1a(file));
  file.insert(file.end(), tail.out.begin(), tail.out.end());
  return file;
}

inline Index deserialize(std::span<const std::uint8_t> file) {
  constexpr std::size_t kHead = 4 + 2 + 8;
  if (file.size() < 4) throw format_error(format_errc::truncated, "shorter than the magic number");
  if (std::memcmp(file.data(), "CDWG", 4) != 0) throw format_error(format_errc::bad_magic, "not an index file");
  if (file.size() < kHead) throw format_error(format_errc::truncated, "header cut short");
  detail::Reader head(file.subspan(4, kHead - 4));
  const auto version = head.get<std::uint16_t>();
  if (version != kFormatVersion) {
    throw format_error(format_errc::unsupported_version, "version " + std::to_string(version));
  }
  const auto body = head.get<std::uint64_t>();
  if (file.size() - kHead < 8 || (file.size() - kHead - 8) < body) {
    throw format_error(format_errc::truncated, "body shorter than declared");
  }
  if (file.size() - kHead - 8 != body) throw format_error(format_errc::corrupt, "trailing bytes");
  detail::Reader sum(file.subspan(kHead + body));
  if (sum.get<std::uint64_t>() != detail::fnv1a(file.first(kHead + body))) {
    throw format_error(format_errc::checksum_mismatch, "stored and computed checksums differ");
  }

  detail::Reader r(file.subspan(kHead, body));
  Index idx;
  Cdawg& c = idx.cdawg;
  c.n = r.get<std::uint32_t>();
  c.sigma = r.get<std::uint32_t>();
  const auto nodes = r.get<std::uint32_t>();
  const auto arcs = r.get<std::uint32_t>();
  c.source = r.get<std::uint32_t>();
  c.sink = r.get<std::uint32_t>();
  c.h = r.get<std::uint32_t>();
  detail::corrupt_unless(static_cast<std::uint64_t>(nodes) * 52 <= body &&
                             static_cast<std::uint64_t>(arcs) * 55 <= body,
                         "table sizes exceed the body");
  c.nodes.resize(nodes);
  for (auto& v : c.nodes) {
    v.length = r.get<std::uint32_t>();
    v.freq = r.get<std::uint32_t>();
    v.suffix_pointer = r.get<std::uint32_t>();
    v.interval = r.interval();
    v.class_size = r.get<std::uint32_t>();
    v.pi_length = r.get<std::uint32_t>();
    v.in_begin = r.get<std::uint32_t>();
    v.in_end = r.get<std::uint32_t>();
    v.out_begin = r.get<std::uint32_t>();
    v.out_end = r.get<std::uint32_t>();
    v.lext_begin = r.get<std::uint32_t>();
    v.lext_end = r.get<std::uint32_t>();
  }
  c.arcs.resize(arcs);
  for (auto& a : c.arcs) {
    a.from = r.get<std::uint32_t>();
    a.to = r.get<std::uint32_t>();
    a.ch = r.get<std::uint8_t>();
    a.right = r.get<std::uint32_t>();
    a.pos = r.get<std::uint32_t>();
    a.label_interval = r.interval();
    a.extension_interval = r.interval();
    a.order = r.get<std::uint32_t>();
    a.previous_char = r.get<std::int16_t>();
    a.nonterminal_ref = r.get<std::uint32_t>();
    a.offset = r.get<std::uint32_t>();
    a.label_owner = r.get<std::uint32_t>();
    a.label_run = r.get<std::uint32_t>();
  }
  r.get(c.in_arcs);
  r.get(c.in_offset);
  r.get(c.left_ext);

  Slp& g = idx.slp;
  for (auto& t : g.terminal) t = r.get<std::uint32_t>();
  r.get(g.f);
  r.get(g.l);
  g.start = r.get<std::uint32_t>();
  g.height = r.get<std::uint32_t>();
  detail::get_dag(r, g.fwd);
  detail::get_dag(r, g.rev);
  detail::get_dag(r, idx.lex_view);
  detail::get_dag(r, idx.freq_view);
  detail::corrupt_unless(r.at_end(), "unread bytes at end of body");
  detail::check_index(idx);
  c.table.build(c.arcs);
  return idx;
}

inline void save_index(const Index& idx, const std::string& path) {
  const auto bytes = serialize(idx);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw format_error(format_errc::io, "cannot open " + path + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw format_error(format_errc::io, "write to " + path + " failed");
}

inline Index load_index(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw format_error(format_errc::io, "cannot open " + path);
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return deserialize(bytes);
}

}  // namespace cdawg
