#include "sawkit/ingest/csv_sweep.hpp"

#include "../text_util.hpp"
#include "sawkit/error.hpp"
#include "sawkit/kv.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

namespace sawkit::ingest
{

namespace
{

using detail::lower;
using detail::parse_double;
using detail::split_char;
using detail::split_lines;
using detail::trim;

std::string list_headers(const std::vector<std::string>& headers)
{
    std::string out;
    for(const auto& h : headers)
    {
        if(!out.empty())
            out += ", ";
        out += h;
    }
    return out;
}

std::size_t column_index(const std::vector<std::string>& headers, const std::string& name)
{
    const auto key = lower(name);
    const auto it = std::find(headers.begin(), headers.end(), key);
    if(it == headers.end())
        throw FormatError("unknown column '" + name + "'; available: " + list_headers(headers), 1);
    return static_cast<std::size_t>(it - headers.begin());
}

std::vector<CsvPairColumns> detect_pairs(const std::vector<std::string>& headers)
{
    constexpr std::array<PortPair, 4> all{PortPair::s11, PortPair::s21, PortPair::s12, PortPair::s22};
    auto has = [&](const std::string& h) { return std::find(headers.begin(), headers.end(), h) != headers.end(); };

    std::vector<CsvPairColumns> out;
    for(auto pair : all)
    {
        const std::string base(to_string(pair));
        if(has(base + "_re") && has(base + "_im"))
            out.push_back({pair, CsvRepresentation::ri, base + "_re", base + "_im"});
        else if(has(base + "_db") && has(base + "_deg"))
            out.push_back({pair, CsvRepresentation::db_phase, base + "_db", base + "_deg"});
    }
    if(out.empty())
        throw FormatError("no S-parameter columns (expected e.g. s21_re,s21_im or s21_db,s21_deg); available: "
                              + list_headers(headers),
                          1);
    return out;
}

} // namespace

NetworkSweep parse_csv_sweep(std::string_view text, const CsvColumnSpec& spec)
{
    auto lines = split_lines(text);
    while(!lines.empty() && trim(lines.back()).empty())
        lines.pop_back();
    if(lines.empty() || trim(lines.front()).empty())
        throw FormatError("empty CSV input");

    std::vector<std::string> headers;
    for(auto h : split_char(trim(lines.front()), ','))
        headers.push_back(lower(trim(h)));

    const auto freq_col = column_index(headers, spec.frequency);
    const auto pairs = spec.pairs.empty() ? detect_pairs(headers) : spec.pairs;

    struct Resolved
    {
        PortPair pair;
        CsvRepresentation representation;
        std::size_t first, second;
    };
    std::vector<Resolved> cols;
    for(const auto& p : pairs)
        cols.push_back({p.pair, p.representation, column_index(headers, p.first), column_index(headers, p.second)});

    NetworkSweep sweep;
    for(const auto& c : cols)
        sweep.s[c.pair];

    for(std::size_t idx = 1; idx < lines.size(); ++idx)
    {
        const std::size_t line_no = idx + 1;
        const auto line = trim(lines[idx]);
        if(line.empty())
            continue;
        const auto fields = split_char(line, ',');
        if(fields.size() != headers.size())
            throw FormatError("expected " + std::to_string(headers.size()) + " fields, found "
                                  + std::to_string(fields.size()),
                              line_no);

        auto number = [&](std::size_t col, bool allow_neg_inf) {
            const auto v = parse_double(fields[col]);
            const bool ok = v && (std::isfinite(*v) || (allow_neg_inf && *v == -HUGE_VAL));
            if(!ok)
                throw FormatError("not a number in column '" + headers[col] + "': '" + std::string(trim(fields[col])) + "'",
                                  line_no);
            return *v;
        };

        const double f = number(freq_col, false) * spec.frequency_scale;
        if(!sweep.freqs.empty() && !(f > sweep.freqs.back()))
            throw FormatError("frequencies must be strictly increasing", line_no);
        sweep.freqs.push_back(f);

        for(const auto& c : cols)
        {
            std::complex<double> v;
            if(c.representation == CsvRepresentation::ri)
                v = {number(c.first, false), number(c.second, false)};
            else
                v = std::polar(std::pow(10.0, number(c.first, true) / 20.0), number(c.second, false) * std::numbers::pi / 180.0);
            sweep.s[c.pair].push_back(v);
        }
    }

    if(sweep.freqs.empty())
        throw FormatError("CSV has a header but no data rows");
    return sweep;
}

std::string write_csv(const NetworkSweep& sweep, std::span<const PortPair> which, CsvRepresentation representation)
{
    if(which.empty())
        throw ArgumentError("write_csv needs at least one port pair");
    sweep.validate();
    for(auto pair : which)
        if(!sweep.has(pair))
            throw ArgumentError("sweep has no " + std::string(to_string(pair)) + " data");

    const bool ri = representation == CsvRepresentation::ri;
    std::string out = "freq_hz";
    for(auto pair : which)
    {
        const std::string base(to_string(pair));
        out += ri ? "," + base + "_re," + base + "_im" : "," + base + "_db," + base + "_deg";
    }
    out += '\n';

    for(std::size_t i = 0; i < sweep.freqs.size(); ++i)
    {
        out += format_double(sweep.freqs[i]);
        for(auto pair : which)
        {
            const auto v = sweep.at(pair)[i];
            out += ',';
            out += format_double(ri ? v.real() : 20.0 * std::log10(std::abs(v)));
            out += ',';
            out += format_double(ri ? v.imag() : std::arg(v) * 180.0 / std::numbers::pi);
        }
        out += '\n';
    }
    return out;
}

} // namespace sawkit::ingest
