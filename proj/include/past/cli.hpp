#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace past {

/// Runs one command line (argv[0] excluded). Returns 0 on success, 1 for a
/// library error (reported by name on `err`), 2 for a usage error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace past
