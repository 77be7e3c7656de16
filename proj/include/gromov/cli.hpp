#ifndef GROMOV_CLI_HPP
#define GROMOV_CLI_HPP

#include <iosfwd>

namespace gromov {

enum ExitCode : int {
    kExitOk = 0,
    kExitAssertion = 1,
    kExitInput = 2,
    kExitNumerical = 3,
};

/// Runs one command line; reports go to `out`, messages to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace gromov

#endif
