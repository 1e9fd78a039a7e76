#pragma once

// Command-line front end. Subcommands: simulate, estimate, tune, recover,
// truth, eval, logreturns. Exit codes: 0 success, 2 usage/config/input error,
// 3 numerical singularity, 1 anything else.

#include <ostream>
#include <string>
#include <vector>

namespace gpgraph {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitSingular = 3;

// `args` excludes the program name. Tables go to `out` unless --out is given.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gpgraph
