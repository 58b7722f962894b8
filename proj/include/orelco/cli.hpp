#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace orelco {

/// Exit statuses of the command-line tool.
enum ExitCode : int { exit_ok = 0, exit_violation = 1, exit_usage = 2, exit_inconclusive = 3 };

/// Runs one command; args excludes the program name.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace orelco
