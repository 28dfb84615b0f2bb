#pragma once

#include <ostream>

namespace rumorlab::cli {

enum ExitCode : int { ok = 0, runtime_error = 1, usage_error = 2 };

/// Entry point of the `rumorlab` tool. Normal output goes to `out` unless
/// --out names a file; diagnostics go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace rumorlab::cli
