#include "sawkit/numerics/stats.hpp"

#include "sawkit/error.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace sawkit::numerics
{

double median(std::span<const double> values)
{
    if(values.empty())
        throw ArgumentError("median of an empty range");
    std::vector<double> v(values.begin(), values.end());
    const auto mid = v.size() / 2;
    std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
    const double upper = v[mid];
    if(v.size() % 2 == 1)
        return upper;
    const double lower = *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid));
    return 0.5 * (lower + upper);
}

LineFit fit_line(std::span<const double> x, std::span<const double> y)
{
    if(x.size() != y.size() || x.size() < 2)
        throw ArgumentError("fit_line needs two or more (x, y) pairs");
    const double n = static_cast<double>(x.size());
    double mx = 0, my = 0;
    for(std::size_t i = 0; i < x.size(); ++i)
    {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0, sxy = 0;
    for(std::size_t i = 0; i < x.size(); ++i)
    {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if(!(sxx > 0))
        throw ArgumentError("fit_line needs at least two distinct x values");
    LineFit out;
    out.slope = sxy / sxx;
    out.intercept = my - out.slope * mx;
    return out;
}

double golden_section_maximize(const std::function<double(double)>& f, double lo, double hi, double tolerance)
{
    const double inv_phi = (std::sqrt(5.0) - 1) / 2;
    double a = lo, b = hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c), fd = f(d);
    while(b - a > tolerance)
    {
        if(fc >= fd)
        {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        }
        else
        {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

} // namespace sawkit::numerics
