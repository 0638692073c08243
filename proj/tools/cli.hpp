#pragma once

#include <iosfwd>

namespace cdawg::cli {

enum Exit : int { kOk = 0, kAbsent = 1, kUsage = 2, kIo = 3 };

/// Runs one subcommand. Data goes to `out`, diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cdawg::cli
