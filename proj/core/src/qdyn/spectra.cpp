#include "sawkit/qdyn/spectra.hpp"

#include "sawkit/error.hpp"
#include "sawkit/numerics/bessel.hpp"
#include "sawkit/numerics/models.hpp"
#include "sawkit/qdyn/rabi.hpp"

#include <cmath>

namespace sawkit::qdyn
{

using numerics::Series;

Series odar_spectrum(double rabi, double f_spin, double pulse_len, std::span<const double> f_grid)
{
    if(f_grid.empty())
        throw ArgumentError("frequency grid is empty");
    if(!(pulse_len > 0))
        throw ArgumentError("pulse length must be positive");

    Series s;
    s.x.assign(f_grid.begin(), f_grid.end());
    s.x_unit = "Hz";
    s.y_unit = "population";
    for(double f : f_grid)
        s.y.push_back(rabi_population({rabi, f - f_spin}, pulse_len));
    return s;
}

double odar_fwhm(double rabi, double pulse_len)
{
    if(!(pulse_len > 0))
        throw ArgumentError("pulse length must be positive");
    const auto p = [&](double detuning) { return rabi_population({rabi, detuning}, pulse_len); };
    const double half = p(0) / 2;
    if(!(half > 0))
        throw ArgumentError("ODAR line has zero height (pulse area is a multiple of 2 pi)");

    // Walk out from resonance to the first half-maximum crossing, then bisect.
    const double step = 0.01 / pulse_len;
    double lo = 0;
    double hi = step;
    for(int i = 0; p(hi) > half; ++i)
    {
        if(i > 100000)
            throw ArgumentError("ODAR half maximum not found");
        lo = hi;
        hi += step;
    }
    for(int i = 0; i < 200 && hi - lo > 1e-12 * hi; ++i)
    {
        const double mid = 0.5 * (lo + hi);
        (p(mid) > half ? lo : hi) = mid;
    }
    return lo + hi;
}

PowerScalingFit fit_power_scaling(std::span<const PowerPoint> points)
{
    if(points.size() < 2)
        throw ArgumentError("power scaling fit needs at least two points");
    double sxy = 0;
    double sxx = 0;
    double syy = 0;
    for(const auto& pt : points)
    {
        if(!std::isfinite(pt.p_rf_dbm) || !std::isfinite(pt.rabi))
            throw ArgumentError("power scaling points must be finite");
        const double x = std::sqrt(std::pow(10.0, pt.p_rf_dbm / 10));
        sxy += x * pt.rabi;
        sxx += x * x;
        syy += pt.rabi * pt.rabi;
    }
    PowerScalingFit fit;
    fit.slope = sxy / sxx;
    double rss = 0;
    for(const auto& pt : points)
    {
        const double r = pt.rabi - fit.slope * std::sqrt(std::pow(10.0, pt.p_rf_dbm / 10));
        rss += r * r;
    }
    fit.residual = syy > 0 ? std::sqrt(rss / syy) : 0.0;
    return fit;
}

std::vector<SidebandWeight> sideband_weights(double mod_index, int orders)
{
    if(orders < 0 || orders > 10)
        throw ArgumentError("sideband orders must lie in 0..10");
    std::vector<SidebandWeight> out;
    for(int k = -orders; k <= orders; ++k)
    {
        // J_{-k}(x) = (-1)^k J_k(x); the square is symmetric.
        const double j = numerics::bessel_j(std::abs(k), mod_index);
        out.push_back({k, j * j});
    }
    return out;
}

Series sideband_spectrum(double carrier,
                         double mod_freq,
                         double mod_index,
                         double linewidth,
                         int orders,
                         std::span<const double> f_grid)
{
    if(f_grid.empty())
        throw ArgumentError("frequency grid is empty");
    if(!(linewidth > 0))
        throw ArgumentError("linewidth must be positive");
    const auto weights = sideband_weights(mod_index, orders);

    Series s;
    s.x.assign(f_grid.begin(), f_grid.end());
    s.x_unit = "Hz";
    for(double f : f_grid)
    {
        double v = 0;
        for(const auto& w : weights)
            v += w.weight * numerics::models::lorentzian_shape(f, carrier + w.order * mod_freq, linewidth);
        s.y.push_back(v);
    }
    return s;
}

} // namespace sawkit::qdyn
