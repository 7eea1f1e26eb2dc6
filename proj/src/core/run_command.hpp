#pragma once

#include <string>

namespace mit {

// Pipeline entry point used by the CLI. Parses the scenario file, runs one of
// {spectrum, transfer, simulate, verify-mono, reconstruct} and writes the
// result files into `out_dir`. No file is written unless the whole command
// succeeds. `threads_override` > 0 replaces the scenario's run.threads.
void run_command(const std::string& subcommand, const std::string& scenario_path,
                 const std::string& out_dir, int threads_override = 0);

}  // namespace mit
