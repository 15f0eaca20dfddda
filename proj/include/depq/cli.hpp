#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace depq::cli {

inline constexpr int kSchemaVersion = 1;

/// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kDomainError = 1;
inline constexpr int kUsageError = 2;

/// Entry point of the depq tool; argv[0] is the program name.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Shortest round-trip decimal, '.' separator regardless of locale.
std::string format_number(double x);

/// "lo:hi:n" (n evenly spaced points) or "x1,x2,...".
std::vector<double> parse_grid(const std::string& text);

}  // namespace depq::cli
