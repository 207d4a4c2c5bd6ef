#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace edpadic::cli {

/// Exit statuses.
inline constexpr int kOk = 0;
inline constexpr int kDomainError = 1;
inline constexpr int kUsageError = 2;

/// Runs one command line (without the program name). Output goes to `out`,
/// diagnostics to `err`; batch mode reads JSON lines from `in`.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace edpadic::cli
