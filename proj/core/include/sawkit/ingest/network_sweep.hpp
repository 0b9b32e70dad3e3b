#pragma once

#include <complex>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace sawkit::ingest
{

enum class PortPair
{
    s11,
    s21,
    s12,
    s22,
};

std::string_view to_string(PortPair pair);  // "s11", "s21", ...

// Accepts "s21", "S21" or "21".
std::optional<PortPair> parse_port_pair(std::string_view text);

// Canonical VNA record: strictly increasing frequency grid in Hz plus one
// complex linear-amplitude vector per measured port pair.
struct NetworkSweep
{
    std::vector<double> freqs;
    std::map<PortPair, std::vector<std::complex<double>>> s;
    double ref_impedance = 50.0;
    std::string label;

    bool has(PortPair pair) const { return s.contains(pair); }

    // Throws ArgumentError when the pair is absent.
    const std::vector<std::complex<double>>& at(PortPair pair) const;

    // Throws ArgumentError: empty grid, no port pairs, length mismatch,
    // non-finite or non-increasing frequencies.
    void validate() const;

    // True when every step matches the mean step to `relative_tolerance`.
    bool is_uniform(double relative_tolerance = 1e-6) const;

    // Mean frequency step; requires at least two points.
    double step() const;
};

// Optional device annotations travelling with a sweep.
struct SweepMeta
{
    std::optional<double> temperature_k;
    std::optional<double> device_length_m;  // IDT separation d
    std::optional<double> idt_pitch_m;      // acoustic wavelength lambda0
    std::string notes;

    // Throws ArgumentError when a present length is not positive.
    void validate() const;
};

} // namespace sawkit::ingest
