// Command-line driver: simulate, sweep, predict, report.

#ifndef LGCP_CLI_HPP
#define LGCP_CLI_HPP

#include <ostream>
#include <span>
#include <string>

namespace lgcp {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 1;
inline constexpr int kExitRuntimeError = 2;

/// args[0] is the program name.
int cli_main(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace lgcp

#endif  // LGCP_CLI_HPP
