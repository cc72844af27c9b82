#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace compwalk {

/// Parses argv-style arguments and runs the selected command, writing results
/// to `out` and diagnostics to `err`. Returns the process exit status:
/// 0 success, 1 domain/validation/usage error, 2 resource error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// main() adapter around run_cli.
int parse_and_dispatch(int argc, char** argv);

}  // namespace compwalk
