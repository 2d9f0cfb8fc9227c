#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace chipstab::cli {

// Exit codes: 0 success, 1 usage or module error (error JSON on `out`),
// 2 when a certification that should always succeed fails.
int run(std::vector<std::string> args, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace chipstab::cli
