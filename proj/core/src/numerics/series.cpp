#include "sawkit/numerics/series.hpp"

#include "sawkit/error.hpp"

#include <cmath>

namespace sawkit::numerics
{

void Series::validate() const
{
    if(x.size() != y.size())
        throw ArgumentError("series x and y lengths differ");
    if(x.size() < 2)
        throw ArgumentError("series needs at least two samples");
    for(std::size_t i = 0; i < x.size(); ++i)
    {
        if(!std::isfinite(x[i]))
            throw ArgumentError("series x contains a non-finite value");
        if(i > 0 && !(x[i] > x[i - 1]))
            throw ArgumentError("series x is not strictly increasing");
    }
}

Series Series::slice(double lo, double hi) const
{
    Series out;
    out.x_unit = x_unit;
    out.y_unit = y_unit;
    for(std::size_t i = 0; i < x.size(); ++i)
    {
        if(x[i] >= lo && x[i] <= hi)
        {
            out.x.push_back(x[i]);
            out.y.push_back(y[i]);
        }
    }
    return out;
}

} // namespace sawkit::numerics
