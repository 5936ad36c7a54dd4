#pragma once

#include <ostream>

namespace stgc::cli {

/// Entry point of the `stgc` tool. Returns the process exit code:
/// 0 success, 1 usage, 2 data error, 3 numerical failure.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace stgc::cli
