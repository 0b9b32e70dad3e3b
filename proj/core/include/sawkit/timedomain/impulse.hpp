#pragma once

#include "sawkit/ingest/network_sweep.hpp"

#include <complex>
#include <utility>
#include <vector>

namespace sawkit::timedomain
{

enum class Window
{
    none,
    raised_cosine,  // Tukey: cosine tapers at both edges, flat in between
};

struct WindowSpec
{
    Window kind = Window::raised_cosine;
    double taper_fraction = 0.1;  // fraction of the points covered by each edge taper
};

// Frequency-domain weights of length n for `spec`.
std::vector<double> window_weights(std::size_t n, const WindowSpec& spec);

struct ImpulseResponse
{
    std::vector<double> tau;  // s, uniform from 0
    std::vector<std::complex<double>> h;
    std::pair<double, double> source_band;  // Hz

    double dtau() const;
    // Frequency step of the transformed sweep, 1 / (N * dtau).
    double freq_step() const;
    // Length of the unaliased record, N * dtau.
    double record_length() const;
};

// Windowed inverse DFT of one port pair. Normalized as
//   h_m = sum_k w_k S_k exp(+2 pi i k m / N) / sum_k w_k
// so an arrival of flat amplitude A shows |h| = A at its delay.
// Time step 1 / (N * df). Throws GridError on a non-uniform grid.
ImpulseResponse impulse_response(const ingest::NetworkSweep& sweep,
                                 const WindowSpec& window = {},
                                 ingest::PortPair pair = ingest::PortPair::s21);

// Zeroes every port pair's (unwindowed) impulse response outside
// [tau_start, tau_stop] and transforms back. Throws ArgumentError for an
// empty gate, GridError on a non-uniform grid.
ingest::NetworkSweep time_gate(const ingest::NetworkSweep& sweep, double tau_start, double tau_stop);

} // namespace sawkit::timedomain
