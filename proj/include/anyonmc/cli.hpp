#ifndef ANYONMC_CLI_HPP
#define ANYONMC_CLI_HPP

#include <string>
#include <vector>

namespace anyonmc::cli {

// Exit codes: 0 success, 2 configuration error, 3 numerical failure,
// 4 inconclusive scientific result.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumerical = 3;
inline constexpr int kExitInconclusive = 4;

int run(const std::vector<std::string>& args);

}  // namespace anyonmc::cli

#endif
