#include "settings.hpp"

#include "sawkit_cli/cli.hpp"

#include <cmath>

namespace sawkit::cli
{

namespace
{

std::string config_key(std::string_view name)
{
    std::string key(name);
    for(char& c : key)
        if(c == '-')
            c = '_';
    return key;
}

} // namespace

bool parse_bool(std::string_view text, std::string_view name)
{
    if(text == "true" || text == "yes" || text == "on" || text == "1")
        return true;
    if(text == "false" || text == "no" || text == "off" || text == "0")
        return false;
    throw UsageError(std::string(name) + ": expected true or false, got '" + std::string(text) + "'");
}

CLI::Option* Settings::option(const std::string& name, const std::string& help, std::optional<std::string> fallback)
{
    auto& e = entries_[name];
    e.fallback = std::move(fallback);
    std::string shown = help;
    if(e.fallback)
        shown += " [default: " + *e.fallback + "]";
    e.opt = app_.add_option("--" + name, e.value, shown);
    return e.opt;
}

CLI::Option* Settings::positional(const std::string& name, const std::string& help)
{
    auto& e = entries_[name];
    e.opt = app_.add_option("--" + name + "," + name, e.value, help);
    return e.opt;
}

void Settings::flag(const std::string& name, const std::string& help)
{
    auto& f = flags_[name];
    f.opt = app_.add_flag("--" + name, f.value, help);
}

bool Settings::enabled(std::string_view name) const
{
    const auto it = flags_.find(name);
    if(it == flags_.end())
        throw std::logic_error("unregistered flag --" + std::string(name));
    if(it->second.opt->count() > 0)
        return it->second.value;
    if(config_)
        if(auto v = config_->get(config_key(name)))
            return parse_bool(*v, name);
    return false;
}

const Settings::Entry& Settings::entry(std::string_view name) const
{
    const auto it = entries_.find(name);
    if(it == entries_.end())
        throw std::logic_error("unregistered option --" + std::string(name));
    return it->second;
}

bool Settings::on_command_line(std::string_view name) const
{
    return entry(name).opt->count() > 0;
}

std::optional<std::string> Settings::raw(std::string_view name) const
{
    const auto& e = entry(name);
    if(e.opt->count() > 0)
        return e.value;
    if(config_)
        if(auto v = config_->get(config_key(name)))
            return v;
    return e.fallback;
}

std::string Settings::text(std::string_view name) const
{
    auto v = raw(name);
    if(!v)
        throw UsageError("missing required --" + std::string(name));
    return *v;
}

double Settings::number(std::string_view name) const
{
    try
    {
        return parse_si(text(name));
    }
    catch(const UsageError& e)
    {
        throw UsageError("--" + std::string(name) + ": " + e.what());
    }
}

std::optional<double> Settings::maybe_number(std::string_view name) const
{
    if(!has(name))
        return std::nullopt;
    return number(name);
}

long long Settings::integer(std::string_view name) const
{
    const double v = number(name);
    if(!std::isfinite(v) || v != std::floor(v) || std::abs(v) > 1e15)
        throw UsageError("--" + std::string(name) + ": expected an integer, got " + text(name));
    return static_cast<long long>(v);
}

std::vector<double> Settings::numbers(std::string_view name) const
{
    const std::string all = text(name);
    std::vector<double> out;
    if(all.empty() || all == "none")
        return out;
    std::size_t start = 0;
    while(true)
    {
        const auto comma = all.find(',', start);
        const std::string item = all.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        try
        {
            out.push_back(parse_si(item));
        }
        catch(const UsageError& e)
        {
            throw UsageError("--" + std::string(name) + ": " + e.what());
        }
        if(comma == std::string::npos)
            break;
        start = comma + 1;
    }
    return out;
}

} // namespace sawkit::cli
