#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace umbilic::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitRootFinding = 3;

/// Runs one command line (without the program name). UMBILIC_SEED, when set,
/// overrides --seed.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace umbilic::cli
