#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace fiber::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

/// Runs one command. `args` excludes the program name.
///
///   decompose SIG C...           boost SIG C... RAPIDITY
///   verify SIG [SAMPLES [SEED [TOL]]]
///   trajectory MASS RAPIDITY SPAN STEPS
///
/// Flags (anywhere): --format {json,csv,pretty} --seed N --tol X --samples N
///                   --labels --threads N --ds-rate X --help
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

std::string usage();

}  // namespace fiber::cli
