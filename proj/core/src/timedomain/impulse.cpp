#include "sawkit/timedomain/impulse.hpp"

#include "sawkit/error.hpp"
#include "sawkit/numerics/dft.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

namespace sawkit::timedomain
{

using numerics::Direction;

namespace
{

void require_uniform(const ingest::NetworkSweep& sweep)
{
    sweep.validate();
    if(sweep.freqs.size() < 2)
        throw ArgumentError("time-domain transform needs at least two frequency points");
    if(!sweep.is_uniform())
        throw GridError("frequency grid is not uniform (1e-6 relative); resample onto a uniform grid before transforming");
}

} // namespace

std::vector<double> window_weights(std::size_t n, const WindowSpec& spec)
{
    std::vector<double> w(n, 1.0);
    if(spec.kind == Window::none || n < 3)
        return w;
    if(!(spec.taper_fraction > 0 && spec.taper_fraction <= 0.5))
        throw ArgumentError("window taper fraction must lie in (0, 0.5]");

    const double edge = spec.taper_fraction * static_cast<double>(n - 1);
    for(std::size_t i = 0; i < n; ++i)
    {
        const double from_edge = std::min<double>(static_cast<double>(i), static_cast<double>(n - 1 - i));
        if(from_edge < edge)
            w[i] = 0.5 * (1 - std::cos(std::numbers::pi * from_edge / edge));
    }
    return w;
}

double ImpulseResponse::dtau() const
{
    if(tau.size() < 2)
        throw ArgumentError("impulse response has fewer than two samples");
    return tau[1] - tau[0];
}

double ImpulseResponse::freq_step() const
{
    return 1.0 / (static_cast<double>(tau.size()) * dtau());
}

double ImpulseResponse::record_length() const
{
    return static_cast<double>(tau.size()) * dtau();
}

ImpulseResponse impulse_response(const ingest::NetworkSweep& sweep, const WindowSpec& window, ingest::PortPair pair)
{
    require_uniform(sweep);
    const auto& s = sweep.at(pair);
    const std::size_t n = s.size();
    const auto w = window_weights(n, window);
    const double wsum = std::accumulate(w.begin(), w.end(), 0.0);

    std::vector<std::complex<double>> weighted(n);
    for(std::size_t k = 0; k < n; ++k)
        weighted[k] = s[k] * w[k];

    ImpulseResponse ir;
    ir.h = numerics::dft(weighted, Direction::inverse);
    const double scale = std::sqrt(static_cast<double>(n)) / wsum;
    for(auto& v : ir.h)
        v *= scale;

    const double dt = 1.0 / (static_cast<double>(n) * sweep.step());
    ir.tau.resize(n);
    for(std::size_t m = 0; m < n; ++m)
        ir.tau[m] = static_cast<double>(m) * dt;
    ir.source_band = {sweep.freqs.front(), sweep.freqs.back()};
    return ir;
}

ingest::NetworkSweep time_gate(const ingest::NetworkSweep& sweep, double tau_start, double tau_stop)
{
    if(!(tau_stop > tau_start))
        throw ArgumentError("time gate is empty (stop must exceed start)");
    require_uniform(sweep);

    const std::size_t n = sweep.freqs.size();
    const double dt = 1.0 / (static_cast<double>(n) * sweep.step());

    ingest::NetworkSweep out = sweep;
    for(auto& [pair, values] : out.s)
    {
        auto h = numerics::dft(values, Direction::inverse);
        for(std::size_t m = 0; m < n; ++m)
        {
            const double t = static_cast<double>(m) * dt;
            if(t < tau_start || t > tau_stop)
                h[m] = 0;
        }
        values = numerics::dft(h, Direction::forward);
    }
    return out;
}

} // namespace sawkit::timedomain
