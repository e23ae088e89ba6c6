#pragma once

#include <iosfwd>

namespace wheellab::cli {

// Parses argv and runs one subcommand. Results go to `out`, diagnostics to
// `err`. Exit codes: 0 success (all checks passed), 1 verification failure,
// 2 usage or domain errors.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace wheellab::cli
