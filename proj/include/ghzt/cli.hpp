#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ghzt::cli {

/// Runs the `ghzt` command line. args[0] is the program name. Results go to
/// `out` (or --output), diagnostics to `err`. Returns the process exit code:
/// 0 on success, 1 for usage errors, 2 for rejected parameters or failed
/// runs, 3 for an unwritable output path.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ghzt::cli
