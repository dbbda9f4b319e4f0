#pragma once

#include <iosfwd>

namespace sperner::cli {

enum Exit : int {
  ok = 0,
  precondition = 2,
  verification = 3,
  io = 4,
};

/// Parses the command line and runs one subcommand.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace sperner::cli
