#pragma once

#include <ostream>
#include <span>
#include <string>

namespace objkb {

// Exit codes of the `kb` command.
enum ExitCode : int {
    kExitOk = 0,
    kExitValidation = 1,
    kExitParse = 2,
    kExitUnknownId = 3,
    kExitRejected = 4,
    kExitUsage = 5,
};

// `args` excludes the program name.
int run_cli(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace objkb
