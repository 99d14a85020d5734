#pragma once

#include <string>
#include <vector>

namespace osc {

/// Exit codes: 0 ok, 2 input error, 3 bound-assertion failure,
/// 4 numerical failure (eigenvalue clustering ambiguity).
inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;
inline constexpr int kExitBounds = 3;
inline constexpr int kExitNumerical = 4;

int cli_run(const std::vector<std::string>& args);
int cli_run(int argc, char** argv);

}  // namespace osc
