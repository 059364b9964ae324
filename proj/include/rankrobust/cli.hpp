#pragma once

namespace rankrobust::cli {

/// Runs the command line. Returns 0 on success, 1 on invalid input or a
/// usage error, 2 on an internal error.
int run(int argc, char** argv);

}  // namespace rankrobust::cli
