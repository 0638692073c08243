#include "cli.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <string>
#include <vector>

#include "cdawg/cdawg_index.hpp"

namespace cdawg::cli {
namespace {

struct usage_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<symbol_t> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw format_error(format_errc::io, "cannot open " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::vector<symbol_t> decode_hex(const std::string& s) {
  auto nibble = [&](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    throw usage_error("bad hex digit in '" + s + "'");
  };
  if (s.size() % 2 != 0) throw usage_error("hex pattern needs an even number of digits");
  std::vector<symbol_t> out;
  for (std::size_t i = 0; i < s.size(); i += 2) {
    out.push_back(static_cast<symbol_t>(nibble(s[i]) * 16 + nibble(s[i + 1])));
  }
  return out;
}

Pattern make_pattern(const std::string& raw, bool hex) {
  try {
    if (hex) return Pattern::from_bytes(decode_hex(raw));
    return Pattern::from_string(raw);
  } catch (const invalid_input& e) {
    throw usage_error(e.what());
  }
}

// The sentinel prints as '#', or as 00 in hex mode.
void print_word(std::ostream& out, std::span<const symbol_t> w, bool hex) {
  static constexpr char kDigits[] = "0123456789abcdef";
  for (symbol_t c : w) {
    if (hex) {
      out << kDigits[c >> 4] << kDigits[c & 15];
    } else {
      out << (c == kSentinel ? '#' : static_cast<char>(c));
    }
  }
  out << '\n';
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"CDAWG self-index"};
  app.require_subcommand(1);

  std::string input, output, index_path, pattern, query_file, order = "lex";
  bool hex = false, strict = false, include_sentinel = false, rtl = false;
  std::uint64_t limit = 0, k = 0;
  std::uint32_t arc = 0;

  auto* build = app.add_subcommand("build", "build an index from a text file");
  build->add_option("-i,--input", input, "text file")->required();
  build->add_option("-o,--output", output, "index file")->required();

  auto with_index = [&](CLI::App* sub) { sub->add_option("-x,--index", index_path, "index file")->required(); };
  auto with_pattern = [&](CLI::App* sub) {
    sub->add_option("-p,--pattern", pattern, "pattern bytes")->required();
    sub->add_flag("--hex", hex, "pattern is given in hex");
    sub->add_flag("--strict", strict, "exit 1 when the pattern does not occur");
  };

  auto* count_cmd = app.add_subcommand("count", "number of occurrences");
  with_index(count_cmd);
  with_pattern(count_cmd);

  auto* locate_cmd = app.add_subcommand("locate", "1-based occurrence positions");
  with_index(locate_cmd);
  with_pattern(locate_cmd);
  locate_cmd->add_option("--limit", limit, "print at most N positions");

  auto* ms_cmd = app.add_subcommand("ms", "matching statistics of a query file");
  with_index(ms_cmd);
  ms_cmd->add_option("-q,--query", query_file, "query file")->required();

  auto* maws_cmd = app.add_subcommand("maws", "minimal absent words");
  with_index(maws_cmd);
  maws_cmd->add_flag("--include-sentinel", include_sentinel, "keep words holding the sentinel");
  maws_cmd->add_flag("--hex", hex, "print words in hex");

  auto* topk_cmd = app.add_subcommand("topk", "first k occurrences in lex or freq order");
  with_index(topk_cmd);
  with_pattern(topk_cmd);
  topk_cmd->add_option("-k", k, "number of occurrences")->required()->check(CLI::PositiveNumber);
  topk_cmd->add_option("--order", order, "lex or freq")->check(CLI::IsMember({"lex", "freq"}));

  auto* arc_cmd = app.add_subcommand("extract-arc", "label of one arc");
  with_index(arc_cmd);
  arc_cmd->add_option("--arc", arc, "arc id")->required();
  arc_cmd->add_flag("--rtl", rtl, "print the label reversed, read right to left");
  arc_cmd->add_flag("--hex", hex, "print the label in hex");

  auto* decompress_cmd = app.add_subcommand("decompress", "write the indexed text");
  with_index(decompress_cmd);

  auto* stats_cmd = app.add_subcommand("stats", "structure statistics");
  with_index(stats_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (build->parsed()) {
      const auto bytes = read_file(input);
      Text t;
      try {
        t = Text::from_bytes(bytes);
      } catch (const invalid_input& e) {
        err << "error: " << input << ": " << e.what() << '\n';
        return kIo;
      }
      save_index(build_index(t), output);
      return kOk;
    }

    if (ms_cmd->parsed()) {
      const auto raw = read_file(query_file);
      Pattern q;
      try {
        q = Pattern::from_bytes(raw);
      } catch (const invalid_input& e) {
        throw usage_error(e.what());
      }
      const Index idx = load_index(index_path);
      const auto ms = matching_statistics(idx, q);
      for (std::size_t i = 0; i < ms.size(); ++i) out << (i ? " " : "") << ms[i];
      out << '\n';
      return kOk;
    }

    // Validate the pattern before touching the index file.
    std::optional<Pattern> p;
    if (count_cmd->parsed() || locate_cmd->parsed() || topk_cmd->parsed()) p = make_pattern(pattern, hex);

    const Index idx = load_index(index_path);

    if (count_cmd->parsed()) {
      const auto c = count(idx, *p);
      out << c << '\n';
      return strict && c == 0 ? kAbsent : kOk;
    }
    if (locate_cmd->parsed()) {
      auto pos = locate(idx, *p);
      if (limit > 0 && pos.size() > limit) pos.resize(limit);
      for (auto x : pos) out << x << '\n';
      return strict && pos.empty() ? kAbsent : kOk;
    }
    if (topk_cmd->parsed()) {
      const auto pos = top_k(idx, *p, k, order == "freq" ? Order::freq : Order::lex);
      for (auto x : pos) out << x << '\n';
      return strict && pos.empty() ? kAbsent : kOk;
    }
    if (maws_cmd->parsed()) {
      for (const auto& w : minimal_absent_words(idx, include_sentinel)) print_word(out, w, hex);
      return kOk;
    }
    if (arc_cmd->parsed()) {
      if (arc >= idx.cdawg.arc_count()) {
        throw usage_error("arc id " + std::to_string(arc) + " out of range (arcs: " +
                          std::to_string(idx.cdawg.arc_count()) + ")");
      }
      Word w;
      if (rtl) {
        auto cur = extract_arc_label_rtl(idx, arc);
        while (auto c = cur.next()) w.push_back(*c);
      } else {
        w = arc_label(idx, arc);
      }
      print_word(out, w, hex);
      return kOk;
    }
    if (decompress_cmd->parsed()) {
      const Word t = reconstruct_text(idx);
      out.write(reinterpret_cast<const char*>(t.data()), static_cast<std::streamsize>(t.size() - 1));
      return kOk;
    }
    if (stats_cmd->parsed()) {
      const auto s = stats(idx.cdawg);
      out << "n " << s.n << '\n'
          << "sigma " << s.sigma << '\n'
          << "node_count " << s.node_count << '\n'
          << "e " << s.e << '\n'
          << "h " << s.h << '\n'
          << "maximal_repeat_count " << s.maximal_repeat_count << '\n'
          << "sink_in_degree " << s.sink_in_degree << '\n';
      return kOk;
    }
  } catch (const usage_error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const format_error& e) {
    err << "error: " << e.what() << '\n';
    return kIo;
  }
  return kUsage;
}

}  // namespace cdawg::cli
