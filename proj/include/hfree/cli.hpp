#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hfree::cli {

inline constexpr int kSchemaVersion = 1;

/// Runs one command line (without the program name). Returns the exit code:
/// 0 ok, 2 usage or parameter error, 3 capability error, 4 internal error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hfree::cli
