#pragma once

#include "sawkit/error.hpp"
#include "sawkit/numerics/series.hpp"

#include <filesystem>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace sawkit::cli
{

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;     // bad flags, unreadable or malformed input
inline constexpr int kExitAnalysis = 3;  // input was fine, the analysis failed

// Bad flag values, missing required settings, unreadable inputs.
class UsageError : public Error
{
public:
    using Error::Error;
};

// Entry point behind the `sawkit` executable. `args` excludes the program
// name. Diagnostics go to `err` as one line; reports go to `out`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Number with an optional SI suffix: f p n u m k M G T ("3.83G", "1.7u").
// Throws UsageError.
double parse_si(std::string_view text);

// Write-then-rename, creating parent directories. Throws Error on I/O failure.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

// Minimal SVG line plot: frame, five ticks per axis, one polyline.
std::string svg_line_plot(const numerics::Series& series, std::string_view title);

// Two-column CSV with the given header names, 17 significant digits.
std::string series_csv(const numerics::Series& series, std::string_view x_name, std::string_view y_name);

} // namespace sawkit::cli
