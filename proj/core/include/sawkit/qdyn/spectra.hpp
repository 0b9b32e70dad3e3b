#pragma once

#include "sawkit/numerics/series.hpp"

#include <span>
#include <vector>

namespace sawkit::qdyn
{

// Spin-up population after a pulse of length pulse_len, as a function of
// drive frequency (detuning f - f_spin).
numerics::Series odar_spectrum(double rabi, double f_spin, double pulse_len, std::span<const double> f_grid);

// Full width at half maximum of the ODAR line, by bisection on the closed form.
double odar_fwhm(double rabi, double pulse_len);

struct PowerPoint
{
    double p_rf_dbm = 0;
    double rabi = 0;  // Hz
};

struct PowerScalingFit
{
    double slope = 0;     // Hz per sqrt(mW)
    double residual = 0;  // |rabi - c sqrt(P)| / |rabi|
};

// Through-origin least squares of rabi = c sqrt(P_mW), P_mW = 10^(dBm / 10).
PowerScalingFit fit_power_scaling(std::span<const PowerPoint> points);

struct SidebandWeight
{
    int order = 0;
    double weight = 0;  // J_order(beta)^2
};

// Phase-modulation weights J_k(beta)^2 for k = -orders..orders.
std::vector<SidebandWeight> sideband_weights(double mod_index, int orders);

// sum_k J_k(beta)^2 L(f; carrier + k mod_freq, linewidth), with L
// peak-normalized, so beta = 0 gives a unit carrier.
numerics::Series sideband_spectrum(double carrier,
                                   double mod_freq,
                                   double mod_index,
                                   double linewidth,
                                   int orders,
                                   std::span<const double> f_grid);

} // namespace sawkit::qdyn
