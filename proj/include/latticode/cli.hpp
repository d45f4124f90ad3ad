#pragma once

#include <iosfwd>

namespace latticode::cli {

/// Entry point of the latticode tool. Returns the process exit code; errors
/// are reported as a single line on err.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace latticode::cli
