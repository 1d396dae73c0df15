#pragma once

#include <iosfwd>

namespace kusuoka::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitMathError = 1;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitBudget = 3;
inline constexpr int kExitUnknownCommand = 64;
inline constexpr int kExitBadConfig = 65;

/// Entry point of the `kusuoka` tool. Results go to `out` (or the --out file), diagnostics
/// to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace kusuoka::cli
