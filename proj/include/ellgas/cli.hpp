#pragma once

#include <ostream>

namespace ellgas::cli {

enum ExitCode : int { kOk = 0, kUsage = 2, kIo = 3 };

/// Runs the ellipse-gas command line. Results go to --output or `out`; diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ellgas::cli
