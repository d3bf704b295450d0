#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace strokesyn {

enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitData = 2 };

/// Run the command-line tool. `args` excludes the program name.
/// Subcommands: analyze, synth, render, lod, serve.
int cli_run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace strokesyn
