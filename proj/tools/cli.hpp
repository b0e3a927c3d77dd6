#ifndef TSF_TOOLS_CLI_HPP
#define TSF_TOOLS_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace tsf::cli {

// args excludes the program name. Exit status: 0 success or verdict,
// 1 invalid input, 2 capacity or budget exhausted. Failures write one line
// "error: <code>: <detail>" to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tsf::cli

#endif
