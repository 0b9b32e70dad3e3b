#pragma once

#include "sawkit/numerics/series.hpp"

#include <cstddef>
#include <vector>

namespace sawkit::specanalysis
{

struct PeakCandidate
{
    std::size_t index = 0;  // sample index in the trace
    double x = 0;           // Hz
    double height = 0;
    double prominence = 0;
};

// Local maxima whose topographic prominence is at least `min_prominence`.
// Candidates closer than `min_spacing` are thinned keeping the taller one
// (equal heights: the lower frequency). Result is sorted by frequency.
// Flat tops report their middle sample. Needs >= 3 samples.
std::vector<PeakCandidate> find_peaks(const numerics::Series& trace, double min_prominence, double min_spacing);

} // namespace sawkit::specanalysis
