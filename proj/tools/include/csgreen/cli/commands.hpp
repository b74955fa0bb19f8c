#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace csgreen::cli {

/// Run the command-line tool on the given arguments (program name excluded).
/// Subcommands: matelem, green, spectrum, states, sweep, bench-table1.
/// Returns the process exit code: 0 success, 1 usage or config error,
/// 2 numerical failure, 3 benchmark mismatch.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace csgreen::cli
