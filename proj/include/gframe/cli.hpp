#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "gframe/error.hpp"

namespace gframe::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitResourceCap = 3;
inline constexpr int kExitInvariant = 4;

int exit_code_for(ErrorKind kind);

/// Runs `gframe <command> ...`; args excludes the program name. Errors are
/// reported as a JSON object on `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gframe::cli
