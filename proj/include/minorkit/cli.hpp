#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace minorkit {

// Runs one command-line invocation (arguments without the program name).
// Payload goes to `out`, diagnostics (machine-readable error JSON, usage
// text) to `err`.  Exit codes: 0 success, 1 domain rejection / failed check,
// 2 budget exhaustion, 64 usage error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace minorkit
