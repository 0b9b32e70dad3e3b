#include "sawkit/ingest/touchstone.hpp"

#include "../text_util.hpp"
#include "sawkit/error.hpp"
#include "sawkit/kv.hpp"

#include <array>
#include <cmath>
#include <numbers>

namespace sawkit::ingest
{

namespace
{

using detail::parse_double;
using detail::split_lines;
using detail::split_whitespace;
using detail::trim;
using detail::upper;

constexpr std::string_view kMetaTag = "sawkit-meta";

struct Options
{
    double scale = 1e9;
    TouchstoneFormat format = TouchstoneFormat::ma;
    double impedance = 50.0;
};

Options parse_option_line(std::string_view body, std::size_t line_no)
{
    Options opt;
    const auto tokens = split_whitespace(body);
    for(std::size_t i = 0; i < tokens.size(); ++i)
    {
        const auto t = upper(tokens[i]);
        if(t == "HZ") opt.scale = 1;
        else if(t == "KHZ") opt.scale = 1e3;
        else if(t == "MHZ") opt.scale = 1e6;
        else if(t == "GHZ") opt.scale = 1e9;
        else if(t == "RI") opt.format = TouchstoneFormat::ri;
        else if(t == "MA") opt.format = TouchstoneFormat::ma;
        else if(t == "DB") opt.format = TouchstoneFormat::db;
        else if(t == "S") continue;
        else if(t == "Y" || t == "Z" || t == "G" || t == "H")
            throw FormatError("only S-parameter files are supported (found '" + t + "')", line_no);
        else if(t == "R")
        {
            if(i + 1 >= tokens.size())
                throw FormatError("option 'R' needs an impedance value", line_no);
            const auto z = parse_double(tokens[++i]);
            if(!z || !(*z > 0) || !std::isfinite(*z))
                throw FormatError("reference impedance must be a positive number", line_no);
            opt.impedance = *z;
        }
        else
            throw FormatError("unknown option token '" + std::string(tokens[i]) + "'", line_no);
    }
    return opt;
}

std::complex<double> to_complex(double a, double b, TouchstoneFormat format)
{
    switch(format)
    {
    case TouchstoneFormat::ri:
        return {a, b};
    case TouchstoneFormat::ma:
        return std::polar(a, b * std::numbers::pi / 180.0);
    case TouchstoneFormat::db:
        return std::polar(std::pow(10.0, a / 20.0), b * std::numbers::pi / 180.0);
    }
    return {a, b};
}

// Removes a trailing '!' comment; returns the comment text (without '!') via `comment`.
std::string_view strip_comment(std::string_view line, std::string_view* comment = nullptr)
{
    const auto bang = line.find('!');
    if(bang == std::string_view::npos)
        return line;
    if(comment)
        *comment = line.substr(bang + 1);
    return line.substr(0, bang);
}

} // namespace

NetworkSweep parse_touchstone(std::string_view text)
{
    constexpr std::array<PortPair, 4> order{PortPair::s11, PortPair::s21, PortPair::s12, PortPair::s22};

    NetworkSweep sweep;
    std::array<std::vector<std::complex<double>>, 4> values;
    std::optional<Options> options;

    const auto lines = split_lines(text);
    for(std::size_t idx = 0; idx < lines.size(); ++idx)
    {
        const std::size_t line_no = idx + 1;
        const auto line = trim(strip_comment(lines[idx]));
        if(line.empty())
            continue;

        if(line.front() == '[')
            throw FormatError("Touchstone v2 keyword '" + std::string(line) + "' is not supported (v1 only)", line_no);

        if(line.front() == '#')
        {
            if(!options)
                options = parse_option_line(line.substr(1), line_no);
            continue;
        }

        if(!options)
            throw FormatError("data row before the option line ('# <unit> S <RI|MA|DB> R <ohms>')", line_no);

        const auto tokens = split_whitespace(line);
        if(tokens.size() != 9)
            throw FormatError("expected 9 columns for a two-port row, found " + std::to_string(tokens.size()), line_no);

        std::array<double, 9> nums{};
        for(std::size_t i = 0; i < 9; ++i)
        {
            const auto v = parse_double(tokens[i]);
            if(!v || !std::isfinite(*v))
                throw FormatError("not a finite number: '" + std::string(tokens[i]) + "'", line_no);
            nums[i] = *v;
        }

        const double f = nums[0] * options->scale;
        if(!std::isfinite(f))
            throw FormatError("frequency overflows", line_no);
        if(!sweep.freqs.empty() && !(f > sweep.freqs.back()))
            throw FormatError("frequencies must be strictly increasing", line_no);
        sweep.freqs.push_back(f);
        for(std::size_t k = 0; k < 4; ++k)
            values[k].push_back(to_complex(nums[1 + 2 * k], nums[2 + 2 * k], options->format));
    }

    if(!options)
        throw FormatError("missing option line ('# <unit> S <RI|MA|DB> R <ohms>')", lines.empty() ? 0 : lines.size());
    if(sweep.freqs.empty())
        throw FormatError("no data rows");

    sweep.ref_impedance = options->impedance;
    for(std::size_t k = 0; k < 4; ++k)
        sweep.s[order[k]] = std::move(values[k]);
    return sweep;
}

SweepMeta parse_touchstone_meta(std::string_view text)
{
    SweepMeta meta;
    const auto lines = split_lines(text);
    for(std::size_t idx = 0; idx < lines.size(); ++idx)
    {
        std::string_view comment;
        strip_comment(lines[idx], &comment);
        comment = trim(comment);
        if(!comment.starts_with(kMetaTag))
            continue;
        comment.remove_prefix(kMetaTag.size());
        const auto eq = comment.find('=');
        if(eq == std::string_view::npos)
            throw FormatError("meta comment needs 'key = value'", idx + 1);
        const auto key = trim(comment.substr(0, eq));
        const auto value = trim(comment.substr(eq + 1));

        auto number = [&]() {
            const auto v = parse_double(value);
            if(!v || !std::isfinite(*v))
                throw FormatError("meta value for '" + std::string(key) + "' is not a number", idx + 1);
            return *v;
        };
        if(key == "temperature_k") meta.temperature_k = number();
        else if(key == "device_length_m") meta.device_length_m = number();
        else if(key == "idt_pitch_m") meta.idt_pitch_m = number();
        else if(key == "notes") meta.notes = std::string(value);
    }
    return meta;
}

std::string write_touchstone(const NetworkSweep& sweep, const TouchstoneWriteOptions& options)
{
    sweep.validate();

    double scale = 1;
    std::string unit = "HZ";
    switch(options.unit)
    {
    case FrequencyUnit::hz: break;
    case FrequencyUnit::khz: scale = 1e3; unit = "KHZ"; break;
    case FrequencyUnit::mhz: scale = 1e6; unit = "MHZ"; break;
    case FrequencyUnit::ghz: scale = 1e9; unit = "GHZ"; break;
    }
    std::string fmt = "RI";
    if(options.format == TouchstoneFormat::ma) fmt = "MA";
    if(options.format == TouchstoneFormat::db) fmt = "DB";

    std::string out;
    if(!sweep.label.empty())
        out += "! " + sweep.label + "\n";
    if(options.meta)
    {
        const auto& m = *options.meta;
        auto put = [&](const char* key, const std::string& value) {
            out += "! ";
            out += kMetaTag;
            out += ' ';
            out += key;
            out += " = ";
            out += value;
            out += '\n';
        };
        if(m.temperature_k) put("temperature_k", format_double(*m.temperature_k));
        if(m.device_length_m) put("device_length_m", format_double(*m.device_length_m));
        if(m.idt_pitch_m) put("idt_pitch_m", format_double(*m.idt_pitch_m));
        if(!m.notes.empty()) put("notes", m.notes);
    }
    out += "# " + unit + " S " + fmt + " R " + format_double(sweep.ref_impedance) + "\n";

    constexpr std::array<PortPair, 4> order{PortPair::s11, PortPair::s21, PortPair::s12, PortPair::s22};
    for(std::size_t i = 0; i < sweep.freqs.size(); ++i)
    {
        out += format_double(sweep.freqs[i] / scale);
        for(auto pair : order)
        {
            const std::complex<double> v = sweep.has(pair) ? sweep.at(pair)[i] : std::complex<double>{};
            double a = v.real(), b = v.imag();
            if(options.format != TouchstoneFormat::ri)
            {
                const double mag = std::abs(v);
                // Exact zeros have no finite dB value; -999 dB is far below any VNA floor.
                a = options.format == TouchstoneFormat::db ? (mag > 0 ? 20.0 * std::log10(mag) : -999.0) : mag;
                b = std::arg(v) * 180.0 / std::numbers::pi;
            }
            out += ' ';
            out += format_double(a);
            out += ' ';
            out += format_double(b);
        }
        out += '\n';
    }
    return out;
}

} // namespace sawkit::ingest
