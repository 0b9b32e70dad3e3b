#pragma once

#include "sawkit/kv.hpp"

#include <CLI11.hpp>

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace sawkit::cli
{

// true/yes/on/1 or false/no/off/0; throws UsageError mentioning `name`.
bool parse_bool(std::string_view text, std::string_view name);

// String-valued options of one subcommand. A value comes from the command
// line first, then from the config file (key = option name with '-' read
// as '_'), then from the registered fallback.
class Settings
{
public:
    explicit Settings(CLI::App& app)
        : app_(app)
    {
    }

    CLI::Option* option(const std::string& name, const std::string& help, std::optional<std::string> fallback = {});

    // Boolean switch; the config accepts true/false, yes/no, 1/0.
    void flag(const std::string& name, const std::string& help);
    bool enabled(std::string_view name) const;

    // Also accepted as the first positional argument.
    CLI::Option* positional(const std::string& name, const std::string& help);

    void bind_config(const KeyValueBlock* config) { config_ = config; }

    bool on_command_line(std::string_view name) const;
    std::optional<std::string> raw(std::string_view name) const;
    bool has(std::string_view name) const { return raw(name).has_value(); }

    // Throw UsageError naming the flag when the value is missing or malformed.
    std::string text(std::string_view name) const;
    double number(std::string_view name) const;
    std::optional<double> maybe_number(std::string_view name) const;
    long long integer(std::string_view name) const;
    std::vector<double> numbers(std::string_view name) const;  // comma separated

private:
    struct Entry
    {
        CLI::Option* opt = nullptr;
        std::string value;
        std::optional<std::string> fallback;
    };

    const Entry& entry(std::string_view name) const;

    struct Flag
    {
        CLI::Option* opt = nullptr;
        bool value = false;
    };

    CLI::App& app_;
    std::map<std::string, Entry, std::less<>> entries_;
    std::map<std::string, Flag, std::less<>> flags_;
    const KeyValueBlock* config_ = nullptr;
};

} // namespace sawkit::cli
