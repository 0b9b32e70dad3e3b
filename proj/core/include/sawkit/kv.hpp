#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace sawkit
{

// Flat "key = value" text block. Used for report summaries and for the CLI
// configuration file. Keys keep insertion order when written.
class KeyValueBlock
{
public:
    void set(std::string key, std::string value);
    void set(std::string key, double value);
    void set(std::string key, long long value);

    bool contains(std::string_view key) const;
    std::optional<std::string> get(std::string_view key) const;

    // Throws ArgumentError when the key is missing or not a finite number.
    double get_double(std::string_view key) const;

    const std::vector<std::pair<std::string, std::string>>& entries() const { return entries_; }

    std::string to_string() const;

    // '#' starts a comment (whole line or trailing); blank lines ignored.
    // A later duplicate key overrides an earlier one. Throws FormatError.
    static KeyValueBlock parse(std::string_view text);

private:
    std::vector<std::pair<std::string, std::string>> entries_;
};

// Round-trippable decimal rendering (17 significant digits).
std::string format_double(double value);

} // namespace sawkit
