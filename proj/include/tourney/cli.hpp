#pragma once

#include <iosfwd>

namespace tourney::cli {

enum ExitCode : int {
    kOk = 0,
    kUsage = 1,
    kDataError = 2,
    kGoldenFailure = 3,
};

/// Entry point for `tourney_eval`. All output goes to the given streams or to
/// files named by --out; nothing is read from stdin.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace tourney::cli
