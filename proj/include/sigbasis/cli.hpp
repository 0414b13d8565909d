#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sigbasis {

// Entry point behind the command-line binary. Takes the arguments after the
// program name; writes results to `out`, diagnostics to `err`, and reads
// piped documents from `in` where a subcommand accepts them. Returns 0 on
// success, 1 on invalid input or data problems, 2 on violated internal
// invariants. Kept in the library so tests can drive subcommands directly.
int cli_run(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err, std::istream& in);

// Same, reading piped documents from the process standard input.
int cli_run(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace sigbasis
