#pragma once

#include "sawkit/numerics/least_squares.hpp"
#include "sawkit/numerics/series.hpp"

#include <cstdint>
#include <limits>
#include <span>

namespace sawkit::qdyn
{

// Cyclic frequencies throughout; the population oscillates as cos(2 pi rabi t).
struct TwoLevelDrive
{
    double rabi = 0;       // Hz
    double detuning = 0;   // Hz, drive minus spin splitting
    double decay_tau = std::numeric_limits<double>::infinity();  // s

    void validate() const;
};

struct PulseSequence
{
    double init_optical = 300e-9;     // s
    double saw_pulse = 20e-9;         // s
    double readout_optical = 300e-9;  // s

    void validate() const;
};

// P(t) = Omega^2 / (Omega^2 + Delta^2) sin^2(pi sqrt(Omega^2 + Delta^2) t),
// relaxed toward 1/2 as 1/2 + (P - 1/2) exp(-t / tau).
double rabi_population(const TwoLevelDrive& drive, double t);

// 1/2 (1 - exp(-t / tau) cos(2 pi rabi t)) plus N(0, sigma) noise from
// std::mt19937_64(seed).
numerics::Series simulate_rabi_trace(double rabi,
                                     double decay_tau,
                                     std::span<const double> t_grid,
                                     double noise_sigma = 0,
                                     std::uint64_t seed = 0);

struct RabiFit
{
    double rabi = 0;       // Hz
    double decay_tau = 0;  // s (infinity when no decay is resolved)
    double offset = 0;
    double amplitude = 0;
    numerics::FitResult fit;
};

// Fits offset - amplitude exp(-t / tau) cos(2 pi rabi t). The starting rabi
// comes from the dominant bin of a zero-padded DFT. Throws FitError when no
// spectral peak stands above the noise floor, fewer than two periods are
// covered, or the solver fails; ArgumentError for a non-uniform time grid.
RabiFit fit_rabi(const numerics::Series& trace);

} // namespace sawkit::qdyn
