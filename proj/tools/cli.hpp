#pragma once

#include <iosfwd>

namespace slab {

// Exit codes of the command-line front end.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;  // I/O and unexpected errors
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumerical = 3;

int cli_main(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace slab
