#pragma once

#include "sawkit/ingest/network_sweep.hpp"

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace sawkit::ingest
{

enum class CsvRepresentation
{
    ri,        // <pair>_re, <pair>_im
    db_phase,  // <pair>_db, <pair>_deg
};

struct CsvPairColumns
{
    PortPair pair = PortPair::s21;
    CsvRepresentation representation = CsvRepresentation::ri;
    std::string first;   // real part or dB
    std::string second;  // imaginary part or degrees
};

// Which header columns hold what. With `pairs` empty the reader looks for
// the conventional names s11_re/s11_im, s11_db/s11_deg, ... and uses every
// pair it finds.
struct CsvColumnSpec
{
    std::string frequency = "freq_hz";
    double frequency_scale = 1.0;  // multiplies the frequency column into Hz
    std::vector<CsvPairColumns> pairs;
};

// Comma-separated, one header row. Throws FormatError for empty input,
// unknown column names (message lists the available headers), ragged rows,
// unparsable numbers and non-increasing frequencies.
NetworkSweep parse_csv_sweep(std::string_view text, const CsvColumnSpec& spec = {});

// Inverse of parse_csv_sweep with conventional column names and 17
// significant digits, so `ri` output re-parses bit-for-bit. Throws
// ArgumentError for an empty pair list or a pair the sweep lacks.
std::string write_csv(const NetworkSweep& sweep, std::span<const PortPair> which, CsvRepresentation representation);

} // namespace sawkit::ingest
