#pragma once

namespace clhide {

// Full command-line entry point (subcommands: mine, sanitize, evaluate,
// experiment). Lives in the library so tests can drive it in-process.
int run_cli(int argc, const char* const* argv);

}  // namespace clhide
