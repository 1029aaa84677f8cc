#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace fbrate::cli {

/// Environment variable holding the default Monte-Carlo seed.
inline constexpr const char* kSeedEnv = "FBRATE_SEED";
inline constexpr unsigned long long kDefaultSeed = 42;

/// Exit codes shared by every subcommand.
enum ExitCode : int {
    kOk = 0,
    kCheckFailed = 1,
    kUsage = 2,
    kNumerical = 3,
};

/// "start:stop:step" (step > 0, start <= stop) or a single value.
struct Range {
    double start = 0.0;
    double stop = 0.0;
    double step = 1.0;

    /// start + k step for k = 0.. while <= stop (with 1e-9 step slack).
    std::vector<double> values() const;
};

/// Throws std::invalid_argument on malformed input or more than 1e5 points.
Range parse_range(std::string_view text);

/// Comma separated numbers; an empty string yields an empty list.
std::vector<double> parse_list(std::string_view text);

/// Nine significant digits, the CSV number format.
std::string format_number(double value);

/// Runs the command line (args excludes the program name) and returns the
/// process exit code. Rows go to `out`, messages to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fbrate::cli
