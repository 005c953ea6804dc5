#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace eqra::cli {

// Exit codes: 0 success / all checks passed, 1 some check failed,
// 2 usage or input error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;
inline constexpr int kExitUsage = 2;

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace eqra::cli
