#pragma once

#include <cstdlib>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

namespace ateich {

/// Exit codes of the command-line front end.
enum ExitCode : int {
  kExitOk = 0,
  kExitValidation = 1,     // malformed input or out-of-range knob
  kExitPropertyFailure = 2,
  kExitUsage = 64,         // unknown subcommand or bad flags (sysexits EX_USAGE)
};

/// Runs one command line (args excludes the program name).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
            const std::function<const char*(const char*)>& getenv = [](const char* k) { return std::getenv(k); });

}  // namespace ateich
