#pragma once

#include "sawkit/numerics/least_squares.hpp"
#include "sawkit/numerics/series.hpp"

#include <optional>
#include <utility>

namespace sawkit::specanalysis
{

// offset + amplitude * (fwhm/2)^2 / ((f - f0)^2 + (fwhm/2)^2). A negative
// amplitude describes a dip (reflection measurements).
struct LorentzianPeak
{
    double f0 = 0;
    double fwhm = 0;
    double amplitude = 0;
    double offset = 0;

    double q() const { return f0 / fwhm; }
    double value(double f) const;
};

struct LorentzianFit
{
    LorentzianPeak peak;
    numerics::FitResult fit;
};

struct DoubleLorentzianFit
{
    LorentzianPeak lower;  // smaller f0
    LorentzianPeak upper;
    bool degenerate = false;  // second component vanished, or the two coincide
    numerics::FitResult fit;
};

// Window is [lo, hi] in Hz and must hold >= 8 samples. Without `init` the
// starting point is: f0 at the extreme sample (largest |y - median|), offset
// = window median, fwhm = width at half prominence.
//
// Throws ArgumentError for a short window, FitError for a flat window
// (degenerate) or when the solver fails; the FitError carries diagnostics.
LorentzianFit fit_lorentzian(const numerics::Series& trace,
                             std::pair<double, double> window,
                             std::optional<LorentzianPeak> init = std::nullopt);

// Two Lorentzians with a shared offset; window must hold >= 16 samples.
// Single-peak or fully overlapping data come back flagged `degenerate`
// instead of throwing. Offsets in the returned peaks are the shared offset.
DoubleLorentzianFit fit_double_lorentzian(const numerics::Series& trace, std::pair<double, double> window);

} // namespace sawkit::specanalysis
