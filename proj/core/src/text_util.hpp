#pragma once

#include <cctype>
#include <charconv>
#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace sawkit::detail
{

inline std::string_view trim(std::string_view s)
{
    const auto ws = " \t\r\n\v\f";
    const auto b = s.find_first_not_of(ws);
    if(b == std::string_view::npos)
        return {};
    const auto e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
}

inline std::vector<std::string_view> split_lines(std::string_view text)
{
    std::vector<std::string_view> lines;
    while(!text.empty())
    {
        const auto nl = text.find('\n');
        lines.push_back(text.substr(0, nl));
        if(nl == std::string_view::npos)
            break;
        text.remove_prefix(nl + 1);
    }
    return lines;
}

inline std::vector<std::string_view> split_whitespace(std::string_view s)
{
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while(i < s.size())
    {
        while(i < s.size() && std::isspace(static_cast<unsigned char>(s[i])))
            ++i;
        const auto start = i;
        while(i < s.size() && !std::isspace(static_cast<unsigned char>(s[i])))
            ++i;
        if(i > start)
            out.push_back(s.substr(start, i - start));
    }
    return out;
}

inline std::vector<std::string_view> split_char(std::string_view s, char sep)
{
    std::vector<std::string_view> out;
    while(true)
    {
        const auto pos = s.find(sep);
        out.push_back(s.substr(0, pos));
        if(pos == std::string_view::npos)
            break;
        s.remove_prefix(pos + 1);
    }
    return out;
}

// Whole-token decimal parse; a leading '+' is accepted.
inline std::optional<double> parse_double(std::string_view token)
{
    token = trim(token);
    if(!token.empty() && token.front() == '+')
        token.remove_prefix(1);
    if(token.empty())
        return std::nullopt;
    double value = 0;
    const auto* last = token.data() + token.size();
    const auto [ptr, ec] = std::from_chars(token.data(), last, value);
    if(ec != std::errc() || ptr != last)
        return std::nullopt;
    return value;
}

inline std::string upper(std::string_view s)
{
    std::string out(s);
    for(auto& c : out)
        c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    return out;
}

inline std::string lower(std::string_view s)
{
    std::string out(s);
    for(auto& c : out)
        c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

} // namespace sawkit::detail
