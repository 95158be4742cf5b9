#pragma once

// Command-line front end. `run` takes the arguments after the program name
// and writes results to `out` and diagnostics to `err`.
//
// Exit codes: 0 success, 2 invalid arguments, invalid problem file or a
// rejected computation, 1 anything else (I/O failures).

#include <iosfwd>
#include <string>
#include <vector>

namespace hardy::cli {

inline constexpr const char* kSeedEnv = "DIRICHLET_RUC_SEED";

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hardy::cli
