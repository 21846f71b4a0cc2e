#ifndef CTC_CLI_HPP
#define CTC_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace ctc::cli {

/// Executes one CLI invocation. Exit status contract:
///   0  every requested verdict passed
///   1  at least one requested verdict failed
///   2  usage, parameter, or I/O error
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ctc::cli

#endif
