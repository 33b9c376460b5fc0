#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace stagetree::cli {

enum ExitStatus : int {
    Success = 0,
    DomainFailure = 1, // invalid tree, non-member, failed check
    UsageError = 2,    // bad arguments or unreadable input
};

// args excludes the program name, e.g. {"dim", "tree.json", "--json"}.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace stagetree::cli
