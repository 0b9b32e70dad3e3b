#include "sawkit/numerics/bessel.hpp"

#include "sawkit/error.hpp"

#include <cmath>

namespace sawkit::numerics
{

namespace
{

constexpr int kMaxOrder = 10;
constexpr double kMaxArgument = 20.0;
constexpr double kSeriesLimit = 12.0;

// Ascending series sum_m (-1)^m (x/2)^(2m+n) / (m! (m+n)!), accumulated in
// long double; the largest term at |x| = 20 is ~1e7, which keeps the
// cancellation error near 1e-12.
long double series(int order, long double x)
{
    const long double half = x / 2;
    long double term = 1;
    for(int k = 1; k <= order; ++k)
        term *= half / k;

    const long double q = -half * half;
    long double sum = term;
    for(int m = 1; m < 200; ++m)
    {
        term *= q / (static_cast<long double>(m) * (m + order));
        sum += term;
        if(std::abs(term) < 1e-22L * std::max(1.0L, std::abs(sum)) && m > std::abs(half))
            break;
    }
    return sum;
}

} // namespace

double bessel_j(int order, double x)
{
    if(order < 0 || order > kMaxOrder)
        throw ArgumentError("bessel_j: order must be in [0, 10]");
    if(!std::isfinite(x) || std::abs(x) > kMaxArgument)
        throw ArgumentError("bessel_j: |x| must be <= 20");

    if(std::abs(x) <= kSeriesLimit || order <= 1)
        return static_cast<double>(series(order, x));

    // Forward recurrence J_{k+1} = (2k/x) J_k - J_{k-1} is stable while
    // k < |x|, which always holds here (order <= 10 < 12 < |x|).
    long double prev = series(0, x);
    long double cur = series(1, x);
    for(int k = 1; k < order; ++k)
    {
        const long double next = (2.0L * k / x) * cur - prev;
        prev = cur;
        cur = next;
    }
    return static_cast<double>(cur);
}

} // namespace sawkit::numerics
