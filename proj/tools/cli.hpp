#ifndef BLOCHKIT_CLI_HPP
#define BLOCHKIT_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace blochkit::cli
{

// Runs one command line (without the program name). The JSON report goes to
// out, diagnostics and the optional summary to err. Returns 0 when every
// verdict holds, 1 on a failed verification and 2 on a usage error.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace blochkit::cli

#endif
