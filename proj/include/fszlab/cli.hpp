#pragma once

// Entry point of the fsz-lab command line tool, kept in the library so that
// tests can drive it without spawning processes.
//
// Exit codes: 0 when every check passed, 1 on a verification mismatch, 2 on a
// usage error or when an enumeration would exceed --budget.

#include <iosfwd>
#include <string>
#include <vector>

namespace fszlab::cli {

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fszlab::cli
