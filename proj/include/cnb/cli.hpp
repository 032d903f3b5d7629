#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cnb {

// Entry point behind the cnb binary, callable in-process for tests.
// args excludes the program name. Exit codes: 0 success, 1 inequality
// violation or residual breach, 2 usage or input errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cnb
