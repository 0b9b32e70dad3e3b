#include "sawkit/kv.hpp"

#include "sawkit/error.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>

namespace sawkit
{

namespace
{

std::string_view trim(std::string_view s)
{
    const auto ws = " \t\r\n";
    const auto b = s.find_first_not_of(ws);
    if(b == std::string_view::npos)
        return {};
    const auto e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
}

} // namespace

std::string format_double(double value)
{
    if(std::isnan(value))
        return "nan";
    if(std::isinf(value))
        return value > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

void KeyValueBlock::set(std::string key, std::string value)
{
    for(auto& [k, v] : entries_)
    {
        if(k == key)
        {
            v = std::move(value);
            return;
        }
    }
    entries_.emplace_back(std::move(key), std::move(value));
}

void KeyValueBlock::set(std::string key, double value)
{
    set(std::move(key), format_double(value));
}

void KeyValueBlock::set(std::string key, long long value)
{
    set(std::move(key), std::to_string(value));
}

bool KeyValueBlock::contains(std::string_view key) const
{
    return get(key).has_value();
}

std::optional<std::string> KeyValueBlock::get(std::string_view key) const
{
    for(const auto& [k, v] : entries_)
        if(k == key)
            return v;
    return std::nullopt;
}

double KeyValueBlock::get_double(std::string_view key) const
{
    const auto v = get(key);
    if(!v)
        throw ArgumentError("missing key '" + std::string(key) + "'");
    double out = 0;
    const auto* first = v->data();
    const auto* last = v->data() + v->size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    if(ec != std::errc() || ptr != last || !std::isfinite(out))
        throw ArgumentError("key '" + std::string(key) + "' is not a finite number: " + *v);
    return out;
}

std::string KeyValueBlock::to_string() const
{
    std::string out;
    for(const auto& [k, v] : entries_)
    {
        out += k;
        out += " = ";
        out += v;
        out += '\n';
    }
    return out;
}

KeyValueBlock KeyValueBlock::parse(std::string_view text)
{
    KeyValueBlock block;
    std::size_t line_no = 0;
    while(!text.empty())
    {
        ++line_no;
        const auto nl = text.find('\n');
        auto line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);

        if(const auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if(line.empty())
            continue;

        const auto eq = line.find('=');
        if(eq == std::string_view::npos)
            throw FormatError("expected 'key = value'", line_no);
        const auto key = trim(line.substr(0, eq));
        const auto value = trim(line.substr(eq + 1));
        if(key.empty())
            throw FormatError("empty key", line_no);
        block.set(std::string(key), std::string(value));
    }
    return block;
}

} // namespace sawkit
