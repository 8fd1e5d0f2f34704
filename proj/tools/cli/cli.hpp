#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pointline::cli {

inline constexpr const char* kConfigSchema = "pointline-config/1";

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kNumericalFailure = 1;
inline constexpr int kUsageError = 2;

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pointline::cli
