#ifndef WAO_TOOLS_COMMANDS_HPP
#define WAO_TOOLS_COMMANDS_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace wao::cli {

// Exit codes of the `wao` tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitUsage = 2;

// Runs `wao <args...>` with the given streams. args excludes the program
// name. Never throws; errors become messages on err and a nonzero code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace wao::cli

#endif  // WAO_TOOLS_COMMANDS_HPP
