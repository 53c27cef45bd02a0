#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fiberorder::cli {

/// Runs the command line `args` (args[0] is the program name). Returns the
/// process exit code: 0 on success, 1 on a domain error, 2 on malformed input.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err);

}  // namespace fiberorder::cli
