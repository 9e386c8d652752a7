#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace recseq::cli {

// Runs one command; args exclude the program name. Exit codes: 0 success,
// 1 malformed input, 2 mathematical precondition failure.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace recseq::cli
