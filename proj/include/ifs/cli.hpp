#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ifs::cli {

// Exit codes: 0 success, 1 certificate mismatch (verify-certificate only),
// 2 parse or precondition error, 3 resource cap or numeric failure.
int run(int argc, char** argv);

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace ifs::cli
