#pragma once

#include <ostream>

namespace affrigid::app {

/// Parses the command line and dispatches; returns the process exit status.
int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err);

} // namespace affrigid::app
