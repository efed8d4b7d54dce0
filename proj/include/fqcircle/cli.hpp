#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace fqcircle::cli {

inline constexpr int kExitSuccess = 0;
inline constexpr int kExitVerificationFailed = 1;
inline constexpr int kExitUsage = 2;

/// Environment variable naming the directory used when --out is not given.
inline constexpr const char* kOutputDirEnv = "FQCIRCLE_OUTPUT_DIR";

/// Runs the command-line front end. args excludes the program name.
/// Returns 0 on success, 1 when a gating verification check fails and 2 for
/// usage or domain errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fqcircle::cli
