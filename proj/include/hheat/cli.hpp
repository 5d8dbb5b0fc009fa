#pragma once

#include <iosfwd>

namespace hheat {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitRuntime = 3;

// Entry point of the `hheat` tool. Subcommands: exponents, simulate, sweep,
// lifespan, kernel-validate, compare. Returns the process exit code.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hheat
