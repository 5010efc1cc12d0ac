#ifndef SPDC_CLI_HPP
#define SPDC_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace spdc::cli {

struct CommandOutcome {
    int exit_code = 0; // 0 ok, 1 usage, 2 config, 3 numerical contract, 4 I/O
    std::vector<std::string> messages;
};

// Dispatches the spdcsim subcommands.  argv excludes the program name.
// Machine-readable summaries go to `out`; diagnostics go to `err` and are
// also collected into the outcome.
CommandOutcome run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err);

} // namespace spdc::cli

#endif
