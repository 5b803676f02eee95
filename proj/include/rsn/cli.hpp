// The `rsn` command line: sample, verify, figures, local.
//
// Exit codes: 0 success (verify: every check passed), 1 a verify check
// failed, 2 usage or invalid parameters, 3 input/output failure.

#ifndef RSN_CLI_HPP
#define RSN_CLI_HPP

#include <iosfwd>

namespace rsn {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitIo = 3;

/// Runs the command line. Reports go to `out`, diagnostics to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace rsn

#endif  // RSN_CLI_HPP
