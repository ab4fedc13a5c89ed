#ifndef MEDIAKG_CLI_COMMANDS_H_
#define MEDIAKG_CLI_COMMANDS_H_

#include <iosfwd>

namespace mediakg::cli {

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitInternalError = 2;

// The whole command line: parses argv (plus an optional --config file),
// runs one subcommand and maps exceptions to exit codes. Results that have no
// output path go to `out`; warnings and errors go to `err`.
int Main(int argc, const char* const* argv, std::ostream& out,
         std::ostream& err);

}  // namespace mediakg::cli

#endif  // MEDIAKG_CLI_COMMANDS_H_
