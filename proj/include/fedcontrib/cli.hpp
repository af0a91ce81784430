#pragma once

#include <string>
#include <vector>

namespace fedcontrib {

// CLI entry point (subcommands: run, sweep, gen-data, check-config).
// Exit codes: 0 success, 2 config error, 3 runtime/capacity error,
// 4 reconciliation failure.
int run_cli(const std::vector<std::string>& args);

}  // namespace fedcontrib
