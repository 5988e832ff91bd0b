#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace stx {

// In-process entry point for the command line tool; args excludes argv[0].
// Returns the process exit code: 0 success, 2 parse or usage error,
// 3 a checked claim was violated, 4 solver node cap hit.
int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace stx
