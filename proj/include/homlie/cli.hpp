#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace homlie {

// Exit codes of the command-line front end.
enum ExitCode : int { kOk = 0, kFalseVerdict = 1, kInputError = 2, kInternalError = 3 };

// Runs one command; args exclude the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace homlie
