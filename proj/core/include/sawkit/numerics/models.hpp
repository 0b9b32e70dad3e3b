#pragma once

#include "sawkit/numerics/least_squares.hpp"

namespace sawkit::numerics::models
{

// All shipped models carry analytic gradients.

// p = (a, b): a + b*x
Model line();

// Peak-normalized Lorentzian of full width `fwhm`, value 1 at x = f0.
double lorentzian_shape(double x, double f0, double fwhm);

// p = (offset, amplitude, f0, fwhm):
//   offset + amplitude * (fwhm/2)^2 / ((x - f0)^2 + (fwhm/2)^2)
Model lorentzian();

// p = (offset, a1, f1, w1, a2, f2, w2): shared offset plus two Lorentzians.
Model double_lorentzian();

// p = (offset, amplitude, rabi_hz, decay_rate):
//   offset - amplitude * exp(-decay_rate * t) * cos(2*pi*rabi_hz*t)
Model decaying_rabi();

// p = (c): c * sqrt(x), x in mW.
Model sqrt_power();

} // namespace sawkit::numerics::models
