#pragma once

#include <string>
#include <vector>

namespace qdot {

// Exit codes of the command-line front end.
inline constexpr int kExitOk = 0;
inline constexpr int kExitSolverFailure = 1;
inline constexpr int kExitInconclusive = 2;
inline constexpr int kExitUsage = 64;

// Subcommands: disk-curves, domain-eig, s-omega, hardy, fk-sweep, neg-mass,
// invariance, selfcheck. args[0] is the program name.
int run(const std::vector<std::string>& args);

// SHA-256 of a byte string, lowercase hex.
std::string sha256_hex(const std::string& data);

}  // namespace qdot
