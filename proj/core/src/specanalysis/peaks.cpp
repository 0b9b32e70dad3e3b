#include "sawkit/specanalysis/peaks.hpp"

#include "sawkit/error.hpp"

#include <algorithm>
#include <cmath>

namespace sawkit::specanalysis
{

namespace
{

// Height above the higher of the two bases, where each base is the lowest
// point passed before reaching a strictly higher sample (or the edge).
double prominence_at(const std::vector<double>& y, std::size_t peak)
{
    double left_min = y[peak];
    for(std::size_t i = peak; i-- > 0;)
    {
        if(y[i] > y[peak])
            break;
        left_min = std::min(left_min, y[i]);
    }
    double right_min = y[peak];
    for(std::size_t i = peak + 1; i < y.size(); ++i)
    {
        if(y[i] > y[peak])
            break;
        right_min = std::min(right_min, y[i]);
    }
    return y[peak] - std::max(left_min, right_min);
}

} // namespace

std::vector<PeakCandidate> find_peaks(const numerics::Series& trace, double min_prominence, double min_spacing)
{
    trace.validate();
    if(trace.size() < 3)
        throw ArgumentError("find_peaks needs at least three samples");
    const auto& y = trace.y;

    std::vector<PeakCandidate> candidates;
    std::size_t i = 1;
    while(i + 1 < y.size())
    {
        if(y[i] > y[i - 1])
        {
            std::size_t j = i;
            while(j + 1 < y.size() && y[j + 1] == y[i])
                ++j;
            if(j + 1 < y.size() && y[j + 1] < y[i])
            {
                const std::size_t mid = (i + j) / 2;
                const double prom = prominence_at(y, mid);
                if(prom >= min_prominence && prom > 0)
                    candidates.push_back({mid, trace.x[mid], y[mid], prom});
            }
            i = j + 1;
        }
        else
        {
            ++i;
        }
    }

    std::vector<PeakCandidate> by_height = candidates;
    std::stable_sort(by_height.begin(), by_height.end(), [](const auto& a, const auto& b) {
        if(a.height != b.height)
            return a.height > b.height;
        return a.x < b.x;
    });

    std::vector<PeakCandidate> kept;
    for(const auto& c : by_height)
    {
        const bool clash = std::any_of(kept.begin(), kept.end(), [&](const auto& k) {
            return std::abs(k.x - c.x) < min_spacing;
        });
        if(!clash)
            kept.push_back(c);
    }
    std::sort(kept.begin(), kept.end(), [](const auto& a, const auto& b) { return a.x < b.x; });
    return kept;
}

} // namespace sawkit::specanalysis
