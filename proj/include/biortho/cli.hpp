#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace biortho::cli {

/// Exit codes of dispatch.
inline constexpr int kOk = 0;
inline constexpr int kDomainError = 1;     // bad arguments, validation, failed acceptance
inline constexpr int kNumericalError = 2;  // solver or iteration failure

std::string usage();

/// Runs one subcommand; args excludes the program name.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int dispatch(const std::vector<std::string>& args);

}  // namespace biortho::cli
