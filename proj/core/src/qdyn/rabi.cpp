#include "sawkit/qdyn/rabi.hpp"

#include "sawkit/error.hpp"
#include "sawkit/kv.hpp"
#include "sawkit/numerics/dft.hpp"
#include "sawkit/numerics/models.hpp"
#include "sawkit/numerics/stats.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <numeric>
#include <random>

namespace sawkit::qdyn
{

using numerics::FitError;
using numerics::Series;

namespace
{

constexpr std::size_t kZeroPad = 8;
constexpr double kPeakOverFloor = 5.0;

// Dominant non-DC frequency of a uniformly sampled trace, refined by a
// parabola through the log-magnitudes of the peak bin and its neighbours.
double dominant_frequency(const Series& trace, double dt)
{
    const std::size_t n = trace.size();
    const double mean = std::accumulate(trace.y.begin(), trace.y.end(), 0.0) / static_cast<double>(n);
    std::vector<std::complex<double>> padded(n * kZeroPad, 0.0);
    for(std::size_t i = 0; i < n; ++i)
        padded[i] = trace.y[i] - mean;

    const auto spectrum = numerics::dft(padded, numerics::Direction::forward);
    const std::size_t half = padded.size() / 2;
    std::vector<double> mag(half);
    for(std::size_t k = 0; k < half; ++k)
        mag[k] = std::abs(spectrum[k]);

    // Skip the DC lobe (main lobe half-width is kZeroPad bins).
    const std::size_t start = kZeroPad;
    if(half <= start + 2)
        throw FitError("Rabi trace too short for a spectral estimate");
    const auto peak = std::max_element(mag.begin() + static_cast<std::ptrdiff_t>(start), mag.end());
    const std::size_t k = static_cast<std::size_t>(peak - mag.begin());
    const double floor = numerics::median(std::span<const double>(mag).subspan(start));
    if(!(*peak > kPeakOverFloor * floor) || !(*peak > 0))
        throw FitError("no spectral peak above the noise floor; the trace does not oscillate");

    double offset = 0;
    if(k + 1 < half)
    {
        const double a = std::log(std::max(mag[k - 1], 1e-300));
        const double b = std::log(mag[k]);
        const double c = std::log(std::max(mag[k + 1], 1e-300));
        const double denom = a - 2 * b + c;
        if(denom < 0)
            offset = std::clamp(0.5 * (a - c) / denom, -0.5, 0.5);
    }
    return (static_cast<double>(k) + offset) / (static_cast<double>(padded.size()) * dt);
}

} // namespace

void TwoLevelDrive::validate() const
{
    if(!(rabi >= 0) || !std::isfinite(rabi))
        throw ArgumentError("Rabi frequency must be finite and non-negative");
    if(!std::isfinite(detuning))
        throw ArgumentError("detuning must be finite");
    if(!(decay_tau > 0))
        throw ArgumentError("decay time must be positive (or infinite)");
}

void PulseSequence::validate() const
{
    if(!(init_optical > 0) || !(saw_pulse > 0) || !(readout_optical > 0))
        throw ArgumentError("pulse durations must be positive");
}

double rabi_population(const TwoLevelDrive& drive, double t)
{
    drive.validate();
    if(!(t >= 0))
        throw ArgumentError("time must be non-negative");
    const double omega2 = drive.rabi * drive.rabi;
    const double total2 = omega2 + drive.detuning * drive.detuning;
    if(total2 == 0)
        return 0;
    const double s = std::sin(std::numbers::pi * std::sqrt(total2) * t);
    const double ideal = omega2 / total2 * s * s;
    if(std::isinf(drive.decay_tau))
        return ideal;
    return 0.5 + (ideal - 0.5) * std::exp(-t / drive.decay_tau);
}

Series simulate_rabi_trace(double rabi, double decay_tau, std::span<const double> t_grid, double noise_sigma, std::uint64_t seed)
{
    if(t_grid.empty())
        throw ArgumentError("time grid is empty");
    if(!(rabi >= 0) || !(decay_tau > 0) || !(noise_sigma >= 0))
        throw ArgumentError("need rabi >= 0, decay_tau > 0, noise_sigma >= 0");

    Series trace;
    trace.x.assign(t_grid.begin(), t_grid.end());
    trace.x_unit = "s";
    trace.y_unit = "population";
    trace.y.resize(t_grid.size());

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> noise(0.0, noise_sigma > 0 ? noise_sigma : 1.0);
    for(std::size_t i = 0; i < t_grid.size(); ++i)
    {
        const double t = t_grid[i];
        const double env = std::isinf(decay_tau) ? 1.0 : std::exp(-t / decay_tau);
        trace.y[i] = 0.5 * (1 - env * std::cos(2 * std::numbers::pi * rabi * t));
        if(noise_sigma > 0)
            trace.y[i] += noise(rng);
    }
    return trace;
}

RabiFit fit_rabi(const Series& trace)
{
    trace.validate();
    const std::size_t n = trace.size();
    if(n < 8)
        throw FitError("Rabi fit needs at least 8 samples");
    const double span = trace.x.back() - trace.x.front();
    const double dt = span / static_cast<double>(n - 1);
    for(std::size_t i = 1; i < n; ++i)
        if(std::abs(trace.x[i] - trace.x[i - 1] - dt) > 1e-6 * dt)
            throw ArgumentError("Rabi fit needs a uniform time grid");

    const double rabi0 = dominant_frequency(trace, dt);
    if(rabi0 * span < 2)
        throw FitError("trace covers fewer than two Rabi periods (estimated " + format_double(rabi0) + " Hz over "
                       + format_double(span) + " s)");

    const auto [lo, hi] = std::minmax_element(trace.y.begin(), trace.y.end());
    const double mean = std::accumulate(trace.y.begin(), trace.y.end(), 0.0) / static_cast<double>(n);
    const std::vector<double> p0 = {mean, (*hi - *lo) / 2, rabi0, 1.0 / span};

    numerics::LeastSquaresOptions options;
    options.bounds = {{}, {}, {0.5 * rabi0, 1.5 * rabi0}, {0.0, numerics::Interval{}.upper}};
    auto result = numerics::least_squares(numerics::models::decaying_rabi(), trace, p0, options);
    if(result.singular)
        throw FitError("Rabi fit is singular", result);
    if(!result.converged)
        throw FitError("Rabi fit did not converge: " + result.message, result);

    RabiFit out;
    out.offset = result.params[0];
    out.amplitude = result.params[1];
    out.rabi = result.params[2];
    const double gamma = result.params[3];
    out.decay_tau = gamma > 0 ? 1.0 / gamma : std::numeric_limits<double>::infinity();
    out.fit = std::move(result);
    return out;
}

} // namespace sawkit::qdyn
