#pragma once

#include "sawkit/ingest/network_sweep.hpp"

#include <string>
#include <string_view>

namespace sawkit::ingest
{

enum class TouchstoneFormat
{
    ri,  // real, imaginary
    ma,  // magnitude, angle in degrees
    db,  // 20*log10(magnitude), angle in degrees
};

enum class FrequencyUnit
{
    hz,
    khz,
    mhz,
    ghz,
};

// Touchstone v1 two-port (.s2p) reader. '!' starts a comment, the option
// line is "# <unit> S <RI|MA|DB> R <ohms>" (tokens in any order, missing
// tokens take the v1 defaults GHZ/MA/50), and every data row holds nine
// numbers: f, then S11 S21 S12 S22 as pairs. All four pairs are populated.
//
// Throws FormatError (with line number) for: data before the option line,
// a missing option line, non-S parameter types, v2 keywords, wrong column
// counts, unparsable numbers, non-increasing frequencies, no data rows.
NetworkSweep parse_touchstone(std::string_view text);

// Device annotations stored as "! sawkit-meta key = value" comments
// (temperature_k, device_length_m, idt_pitch_m, notes). Unknown keys are
// ignored; malformed values throw FormatError.
SweepMeta parse_touchstone_meta(std::string_view text);

struct TouchstoneWriteOptions
{
    TouchstoneFormat format = TouchstoneFormat::ri;
    FrequencyUnit unit = FrequencyUnit::hz;
    const SweepMeta* meta = nullptr;
};

// Writes a v1 .s2p with 17 significant digits. Pairs missing from the sweep
// are written as zero. Throws ArgumentError if the sweep is invalid.
std::string write_touchstone(const NetworkSweep& sweep, const TouchstoneWriteOptions& options = {});

} // namespace sawkit::ingest
