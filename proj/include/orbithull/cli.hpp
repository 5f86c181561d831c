#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace orbithull::cli {

/// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kBadInput = 2;
inline constexpr int kNumericalFailure = 3;

/// Runs one subcommand. Results go to `out` as JSON (or CSV for
/// probe-uniform without --out); errors go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// "2..40", "2,3,5", or a mix such as "2..4,8".
std::vector<int> parse_dims(const std::string& spec);

/// Relative tolerance: ORBITHULL_TOL if set and valid, else 1e−9.
double default_tolerance();

}  // namespace orbithull::cli
