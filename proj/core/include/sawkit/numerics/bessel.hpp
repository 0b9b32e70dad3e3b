#pragma once

namespace sawkit::numerics
{

// Bessel function of the first kind J_order(x) for order 0..10, |x| <= 20,
// absolute error <= 1e-10. Throws ArgumentError outside that range.
double bessel_j(int order, double x);

} // namespace sawkit::numerics
