#include "sawkit/timedomain/synth.hpp"

#include "sawkit/error.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace sawkit::timedomain
{

namespace
{

constexpr double kTailFraction = 1e-9;

void validate(const EchoSynthesis& c)
{
    const auto& m = c.model;
    if(!(m.T >= 0 && m.T <= 1))
        throw ArgumentError("T must lie in [0, 1]");
    if(!(m.R >= 0 && m.R <= 1))
        throw ArgumentError("R must lie in [0, 1]");
    if(!(m.alpha >= 0) || !std::isfinite(m.alpha))
        throw ArgumentError("alpha must be finite and non-negative");
    if(!(m.L > 0))
        throw ArgumentError("L must be positive");
    if(!(c.v_g > 0))
        throw ArgumentError("group velocity must be positive");
    if(!(c.f_hi > c.f_lo) || !(c.f_lo >= 0))
        throw ArgumentError("band must have positive width and non-negative start");
    if(c.n_points < 16)
        throw ArgumentError("echo synthesis needs at least 16 points");
    if(!(c.noise_sigma >= 0))
        throw ArgumentError("noise sigma must be non-negative");
    if(c.idt && (!(c.idt->centre_hz > 0) || !(c.idt->fractional_bandwidth > 0)))
        throw ArgumentError("IDT centre and fractional bandwidth must be positive");
}

} // namespace

double round_trip_time(double L, double v_g)
{
    if(!(L > 0) || !(v_g > 0))
        throw ArgumentError("round trip needs positive L and v_g");
    return 2 * L / v_g;
}

ingest::NetworkSweep synthesize_echo_network(const EchoSynthesis& c)
{
    validate(c);
    const std::size_t n = c.n_points;
    const double df = (c.f_hi - c.f_lo) / static_cast<double>(n - 1);

    ingest::NetworkSweep sweep;
    sweep.label = "synthetic echo network";
    sweep.freqs.resize(n);
    for(std::size_t k = 0; k < n; ++k)
        sweep.freqs[k] = c.f_lo + static_cast<double>(k) * df;
    sweep.freqs.back() = c.f_hi;

    const double centre = c.idt ? c.idt->centre_hz : (c.f_lo + c.f_hi) / 2;
    const double width = c.idt ? c.idt->fractional_bandwidth * c.idt->centre_hz : c.f_hi - c.f_lo;
    std::vector<double> g(n);
    double gsum = 0;
    for(std::size_t k = 0; k < n; ++k)
    {
        const double x = (sweep.freqs[k] - centre) / width;
        g[k] = std::abs(x) <= 0.5 ? std::pow(std::cos(std::numbers::pi * x), 2) : 0.0;
        gsum += g[k];
    }
    if(gsum > 0)
        for(auto& v : g)
            v *= static_cast<double>(n) / gsum;

    const auto& m = c.model;
    const double ratio = m.R * std::exp(-m.alpha * m.L);  // amplitude ratio of consecutive echoes
    const double first = m.T * std::exp(-m.alpha * m.L / 2);
    const double record = 1.0 / df;
    const double half_trip = m.L / c.v_g;

    std::vector<std::complex<double>> echoes(n, 0.0);
    if(first > 0)
    {
        double amp = first;
        for(int k = 0;; ++k)
        {
            const double delay = (2 * k + 1) * half_trip;
            if(delay >= record)
                break;
            for(std::size_t i = 0; i < n; ++i)
            {
                const double phase = -2 * std::numbers::pi * std::fmod(sweep.freqs[i] * delay, 1.0);
                echoes[i] += amp * std::complex<double>(std::cos(phase), std::sin(phase));
            }
            amp *= ratio;
            if(amp == 0 || (ratio < 1 && amp / (1 - ratio) < kTailFraction * first))
                break;
        }
    }

    auto& s21 = sweep.s[ingest::PortPair::s21];
    s21.resize(n);
    for(std::size_t i = 0; i < n; ++i)
        s21[i] = c.crosstalk + g[i] * echoes[i];

    if(c.noise_sigma > 0)
    {
        std::mt19937_64 rng(c.seed);
        std::normal_distribution<double> normal(0.0, c.noise_sigma / std::sqrt(2.0));
        for(auto& v : s21)
            v += std::complex<double>(normal(rng), normal(rng));
    }
    return sweep;
}

} // namespace sawkit::timedomain
