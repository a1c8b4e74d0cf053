#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tauber {

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitInconclusive = 3;

// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run_cli(int argc, char** argv);

// Numeric flag text: a constant expression such as 2, 1e-3, e^pi, e^(e^4).
double parse_number(const std::string& text);

}  // namespace tauber
