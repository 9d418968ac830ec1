#ifndef STOCHDOM_CLI_APP_HPP
#define STOCHDOM_CLI_APP_HPP

#include <ostream>
#include <string>
#include <vector>

namespace stochdom::cli {

// Runs the command-line tool against explicit argument and stream
// endpoints so tests can drive it in-process. Returns the process exit
// code: 0 when the command ran (statistical decisions live in the
// payload), nonzero for operational failures.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace stochdom::cli

#endif
