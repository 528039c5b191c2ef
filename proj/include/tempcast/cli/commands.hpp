#pragma once

#include <ostream>
#include <span>
#include <string>

namespace tempcast::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;
inline constexpr int kExitInternal = 3;

/// Entry point for the `tempcast` tool: `ingest`, `backtest` and `forecast`
/// subcommands. Returns the process exit status.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace tempcast::cli
