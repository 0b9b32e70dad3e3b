#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace sawkit::numerics
{

// Sampled real-valued trace: x strictly increasing, same length as y, at
// least two samples. Units are free-form labels ("Hz", "s", "dB", ...).
struct Series
{
    std::vector<double> x;
    std::vector<double> y;
    std::string x_unit;
    std::string y_unit;

    std::size_t size() const { return x.size(); }

    // Throws ArgumentError when the invariants above do not hold.
    void validate() const;

    // Samples with lo <= x <= hi, in order.
    Series slice(double lo, double hi) const;
};

} // namespace sawkit::numerics
