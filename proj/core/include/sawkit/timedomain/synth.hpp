#pragma once

#include "sawkit/ingest/network_sweep.hpp"
#include "sawkit/timedomain/echoes.hpp"

#include <complex>
#include <cstdint>
#include <optional>

namespace sawkit::timedomain
{

// Raised-cosine IDT passband: cos^2(pi x) for |x| <= 1/2 with
// x = (f - centre) / (fractional_bandwidth * centre), zero outside.
struct IdtResponse
{
    double centre_hz = 0;
    double fractional_bandwidth = 0;
};

struct EchoSynthesis
{
    LossModel model;  // R = 0 is allowed here (single arrival)
    double v_g = 0;   // m/s
    double f_lo = 0;  // Hz
    double f_hi = 0;  // Hz
    std::size_t n_points = 0;
    std::complex<double> crosstalk = 0;
    std::optional<IdtResponse> idt;  // default: passband spans the whole band
    double noise_sigma = 0;          // rms of the complex noise, |n|^2 averages sigma^2
    std::uint64_t seed = 0;
};

// S21(f) = crosstalk + G(f) sum_n T R^n exp(-alpha (2n + 1) L / 2) exp(-i 2 pi f (2n + 1) L / v_g)
// with G normalized to unit mean over the grid. The series stops once the
// omitted tail is below 1e-9 of the first term or the next arrival falls
// outside the unaliased record.
ingest::NetworkSweep synthesize_echo_network(const EchoSynthesis& config);

double round_trip_time(double L, double v_g);

} // namespace sawkit::timedomain
