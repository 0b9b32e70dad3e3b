#include "sawkit_cli/cli.hpp"

#include "sawkit/kv.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <system_error>

namespace sawkit::cli
{

double parse_si(std::string_view text)
{
    while(!text.empty() && std::isspace(static_cast<unsigned char>(text.front())))
        text.remove_prefix(1);
    while(!text.empty() && std::isspace(static_cast<unsigned char>(text.back())))
        text.remove_suffix(1);
    const std::string shown(text);
    if(text.empty())
        throw UsageError("expected a number, got an empty value");

    double value = 0;
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if(ec != std::errc{})
        throw UsageError("not a number: '" + shown + "'");
    const std::string_view suffix(end, static_cast<std::size_t>(text.data() + text.size() - end));
    if(suffix.empty())
        return value;

    static constexpr std::pair<std::string_view, double> kPrefixes[] = {
        {"f", 1e-15}, {"p", 1e-12}, {"n", 1e-9}, {"u", 1e-6}, {"\xC2\xB5", 1e-6},
        {"m", 1e-3},  {"k", 1e3},   {"M", 1e6},  {"G", 1e9},  {"T", 1e12},
    };
    for(const auto& [name, scale] : kPrefixes)
        if(suffix == name)
            return value * scale;
    throw UsageError("unknown SI suffix in '" + shown + "' (use f p n u m k M G T)");
}

void write_file_atomic(const std::filesystem::path& path, std::string_view contents)
{
    std::error_code ec;
    if(path.has_parent_path())
        std::filesystem::create_directories(path.parent_path(), ec);
    if(ec)
        throw Error("cannot create directory " + path.parent_path().string() + ": " + ec.message());

    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if(!f)
            throw Error("cannot write " + tmp.string());
        f.write(contents.data(), static_cast<std::streamsize>(contents.size()));
        f.close();
        if(!f)
            throw Error("cannot write " + tmp.string());
    }
    std::filesystem::rename(tmp, path, ec);
    if(ec)
    {
        std::filesystem::remove(tmp);
        throw Error("cannot rename " + tmp.string() + " to " + path.string() + ": " + ec.message());
    }
}

std::string series_csv(const numerics::Series& series, std::string_view x_name, std::string_view y_name)
{
    std::string text;
    text.append(x_name).append(",").append(y_name).append("\n");
    for(std::size_t i = 0; i < series.size(); ++i)
        text.append(format_double(series.x[i])).append(",").append(format_double(series.y[i])).append("\n");
    return text;
}

namespace
{

std::string fmt(const char* pattern, double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, pattern, v);
    return buf;
}

std::string escape_xml(std::string_view s)
{
    std::string out;
    for(char c : s)
    {
        switch(c)
        {
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '&': out += "&amp;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

} // namespace

std::string svg_line_plot(const numerics::Series& series, std::string_view title)
{
    constexpr double kWidth = 720, kHeight = 440;
    constexpr double kLeft = 80, kRight = 20, kTop = 36, kBottom = 56;
    const double pw = kWidth - kLeft - kRight, ph = kHeight - kTop - kBottom;

    double x0 = 0, x1 = 1, y0 = 0, y1 = 1;
    bool any = false;
    for(std::size_t i = 0; i < series.size(); ++i)
    {
        if(!std::isfinite(series.x[i]) || !std::isfinite(series.y[i]))
            continue;
        if(!any)
        {
            x0 = x1 = series.x[i];
            y0 = y1 = series.y[i];
            any = true;
        }
        x0 = std::min(x0, series.x[i]);
        x1 = std::max(x1, series.x[i]);
        y0 = std::min(y0, series.y[i]);
        y1 = std::max(y1, series.y[i]);
    }
    if(x1 == x0)
        x1 = x0 + 1;
    if(y1 == y0)
    {
        y0 -= 0.5;
        y1 += 0.5;
    }
    const auto px = [&](double x) { return kLeft + (x - x0) / (x1 - x0) * pw; };
    const auto py = [&](double y) { return kTop + (y1 - y) / (y1 - y0) * ph; };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
        << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    svg << "<rect x=\"0\" y=\"0\" width=\"" << kWidth << "\" height=\"" << kHeight << "\" fill=\"white\"/>\n";
    svg << "<text x=\"" << kWidth / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">" << escape_xml(title)
        << "</text>\n";
    svg << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << pw << "\" height=\"" << ph
        << "\" fill=\"none\" stroke=\"black\"/>\n";
    for(int k = 0; k <= 4; ++k)
    {
        const double xv = x0 + (x1 - x0) * k / 4, yv = y0 + (y1 - y0) * k / 4;
        const std::string xs = fmt("%.2f", px(xv)), ys = fmt("%.2f", py(yv));
        svg << "<line x1=\"" << xs << "\" y1=\"" << kTop + ph << "\" x2=\"" << xs << "\" y2=\"" << kTop + ph + 5
            << "\" stroke=\"black\"/>\n";
        svg << "<text x=\"" << xs << "\" y=\"" << kTop + ph + 20 << "\" text-anchor=\"middle\">" << fmt("%.4g", xv)
            << "</text>\n";
        svg << "<line x1=\"" << kLeft - 5 << "\" y1=\"" << ys << "\" x2=\"" << kLeft << "\" y2=\"" << ys
            << "\" stroke=\"black\"/>\n";
        svg << "<text x=\"" << kLeft - 8 << "\" y=\"" << ys << "\" text-anchor=\"end\" dominant-baseline=\"middle\">"
            << fmt("%.4g", yv) << "</text>\n";
    }
    svg << "<text x=\"" << kLeft + pw / 2 << "\" y=\"" << kHeight - 12 << "\" text-anchor=\"middle\">"
        << escape_xml(series.x_unit) << "</text>\n";
    svg << "<text x=\"16\" y=\"" << kTop + ph / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
        << kTop + ph / 2 << ")\">" << escape_xml(series.y_unit) << "</text>\n";

    svg << "<polyline fill=\"none\" stroke=\"#1f5fa8\" stroke-width=\"1.2\" points=\"";
    bool first = true;
    for(std::size_t i = 0; i < series.size(); ++i)
    {
        if(!std::isfinite(series.x[i]) || !std::isfinite(series.y[i]))
            continue;
        svg << (first ? "" : " ") << fmt("%.2f", px(series.x[i])) << "," << fmt("%.2f", py(series.y[i]));
        first = false;
    }
    svg << "\"/>\n</svg>\n";
    return svg.str();
}

} // namespace sawkit::cli
