#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace roboto::cli {

/// Runs one command line. Returns the process exit code: 0 on success, 1
/// when diagnostics or errors were reported, 2 on a usage error.
int runCli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace roboto::cli
