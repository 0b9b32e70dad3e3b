#pragma once

#include <functional>
#include <span>

namespace sawkit::numerics
{

// Median of a non-empty range (mean of the two middle values for even sizes).
double median(std::span<const double> values);

struct LineFit
{
    double intercept = 0;
    double slope = 0;
};

// Ordinary least squares y = intercept + slope * x; needs >= 2 distinct x.
LineFit fit_line(std::span<const double> x, std::span<const double> y);

// Golden-section search for the maximum of a unimodal f on [lo, hi].
// Returns the abscissa; stops when the bracket is below `tolerance`.
double golden_section_maximize(const std::function<double(double)>& f, double lo, double hi, double tolerance);

} // namespace sawkit::numerics
