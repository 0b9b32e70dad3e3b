#include "sawkit/error.hpp"
#include "sawkit/numerics/bessel.hpp"
#include "sawkit/qdyn/rabi.hpp"
#include "sawkit/qdyn/spectra.hpp"
#include "sawkit/specanalysis/lorentzian.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

using namespace sawkit;
using namespace sawkit::qdyn;

namespace
{

std::vector<double> linspace(double lo, double hi, std::size_t n)
{
    std::vector<double> v(n);
    for(std::size_t i = 0; i < n; ++i)
        v[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    return v;
}

} // namespace

TEST(RabiPopulation, ClosedForm)
{
    EXPECT_EQ(rabi_population({33.4e6, 0}, 0), 0);
    EXPECT_NEAR(rabi_population({33.4e6, 0}, 1 / (2 * 33.4e6)), 1, 1e-15);
    EXPECT_NEAR(1 / (2 * 33.4e6), 14.97e-9, 0.01e-9);
    double best = 0;
    for(double t = 0; t < 200e-9; t += 0.01e-9)
        best = std::max(best, rabi_population({10e6, 10e6}, t));
    EXPECT_NEAR(best, 0.5, 1e-6);
    // Decay relaxes toward one half.
    EXPECT_NEAR(rabi_population({10e6, 0, 50e-9}, 10e-6), 0.5, 1e-12);
    EXPECT_THROW(rabi_population({10e6, 0}, -1e-9), ArgumentError);
}

TEST(RabiPopulation, BoundedAndPeriodic)
{
    std::mt19937_64 rng(111);
    std::uniform_real_distribution<double> om(0, 100e6), de(-200e6, 200e6), t(0, 1e-6), tau(1e-9, 1e-6);
    for(int i = 0; i < 5000; ++i)
    {
        const double p = rabi_population({om(rng), de(rng), i % 2 ? tau(rng) : std::numeric_limits<double>::infinity()}, t(rng));
        EXPECT_GE(p, 0);
        EXPECT_LE(p, 1);
    }
    // Maxima of the undamped resonant trace sit at (k + 1/2) / Omega.
    const double omega = 27.3e6;
    for(int k = 0; k < 10; ++k)
        EXPECT_NEAR(rabi_population({omega, 0}, (k + 0.5) / omega), 1, 1e-12);
}

TEST(SimulateRabi, ShapeAndDeterminism)
{
    const auto t = linspace(0, 200e-9, 2001);
    const auto clean = simulate_rabi_trace(33.4e6, std::numeric_limits<double>::infinity(), t);
    const auto peak = std::max_element(clean.y.begin(), clean.y.begin() + 300) - clean.y.begin();
    EXPECT_NEAR(clean.x[static_cast<std::size_t>(peak)], 14.97e-9, 0.1e-9);
    for(int k = 0; k < 5; ++k)
    {
        const double tk = k / (2 * 33.4e6);
        EXPECT_NEAR(0.5 * (1 - std::cos(2 * std::numbers::pi * 33.4e6 * tk)), k % 2 ? 1.0 : 0.0, 1e-12);
    }
    const auto a = simulate_rabi_trace(33.4e6, 150e-9, t, 0.02, 9);
    const auto b = simulate_rabi_trace(33.4e6, 150e-9, t, 0.02, 9);
    EXPECT_EQ(a.y, b.y);
    EXPECT_NE(a.y, simulate_rabi_trace(33.4e6, 150e-9, t, 0.02, 10).y);
    EXPECT_THROW(simulate_rabi_trace(1e6, 1e-6, std::vector<double>{}), ArgumentError);
}

TEST(FitRabi, NoiselessIsExact)
{
    const auto t = linspace(0, 300e-9, 3000);
    const auto r = fit_rabi(simulate_rabi_trace(33.4e6, 150e-9, t));
    EXPECT_NEAR(r.rabi / 33.4e6, 1, 1e-6);
    EXPECT_NEAR(r.decay_tau / 150e-9, 1, 1e-6);
    EXPECT_NEAR(r.offset, 0.5, 1e-6);
    EXPECT_NEAR(r.amplitude, 0.5, 1e-6);
}

TEST(FitRabi, NamedFixtureWithNoise)
{
    const auto t = linspace(0, 900e-9, 6000);
    const auto r = fit_rabi(simulate_rabi_trace(33.4e6, 150e-9, t, 0.02, 2024));
    EXPECT_NEAR(r.rabi / 33.4e6, 1, 0.02);
    EXPECT_NEAR(r.decay_tau / 150e-9, 1, 0.02);
}

TEST(FitRabi, SeededFamilyWithinTwoPercent)
{
    std::mt19937_64 rng(112);
    std::uniform_real_distribution<double> om(5e6, 100e6), tau(50e-9, 500e-9);
    for(int i = 0; i < 40; ++i)
    {
        const double o = om(rng), d = tau(rng);
        const auto t = linspace(0, std::max(4 / o, 6 * d), 6000);
        const auto r = fit_rabi(simulate_rabi_trace(o, d, t, 0.02, 500 + i));
        EXPECT_NEAR(r.rabi / o, 1, 0.02) << "Omega " << o << " tau " << d;
        EXPECT_NEAR(r.decay_tau / d, 1, 0.02) << "Omega " << o << " tau " << d;
    }
}

TEST(FitRabi, Failures)
{
    const auto t = linspace(0, 100e-9, 500);
    numerics::Series flat;
    flat.x = t;
    flat.y.assign(t.size(), 0.5);
    EXPECT_THROW(fit_rabi(flat), numerics::FitError);
    // One period only.
    EXPECT_THROW(fit_rabi(simulate_rabi_trace(12e6, 1e-6, t)), numerics::FitError);
    auto uneven = simulate_rabi_trace(50e6, 1e-6, t);
    uneven.x[100] += 0.05e-9;
    EXPECT_THROW(fit_rabi(uneven), ArgumentError);
}

TEST(Odar, PeakSymmetryAndWidth)
{
    const auto f = linspace(3.73e9, 3.93e9, 4001);
    const auto s = odar_spectrum(25e6, 3.83e9, 20e-9, f);
    const auto peak = std::max_element(s.y.begin(), s.y.end()) - s.y.begin();
    EXPECT_EQ(s.x[static_cast<std::size_t>(peak)], 3.83e9);
    const double top = std::pow(std::sin(std::numbers::pi * 25e6 * 20e-9), 2);
    EXPECT_DOUBLE_EQ(s.y[static_cast<std::size_t>(peak)], top);
    for(std::size_t i = 0; i < f.size(); ++i)
        EXPECT_NEAR(s.y[i], s.y[f.size() - 1 - i], 1e-12);

    // Brute-force half-maximum crossing on a fine grid.
    const auto fine = linspace(0, 60e6, 600001);
    double cross = 0;
    for(double d : fine)
        if(rabi_population({25e6, d}, 20e-9) < top / 2)
        {
            cross = d;
            break;
        }
    EXPECT_NEAR(2 * cross, 39.934267764e6, 250);
    EXPECT_NEAR(odar_fwhm(25e6, 20e-9), 39.934267764e6, 1);
    EXPECT_THROW(odar_fwhm(50e6, 20e-9), ArgumentError);  // 2 pi pulse: no line
}

TEST(PowerScaling, ExactAndNoisy)
{
    const double c = 33.4e6 / std::sqrt(std::pow(10.0, -0.4));
    EXPECT_NEAR(c, 52.9354e6, 100);
    std::vector<PowerPoint> pts;
    for(double dbm : {-12.0, -8.0, -4.0, 0.0, 2.0})
        pts.push_back({dbm, c * std::sqrt(std::pow(10.0, dbm / 10))});
    const auto exact = fit_power_scaling(pts);
    EXPECT_NEAR(exact.slope / c, 1, 1e-14);
    EXPECT_NEAR(exact.residual, 0, 1e-14);
    // +6 dB doubles the Rabi frequency.
    EXPECT_NEAR(exact.slope * std::sqrt(std::pow(10.0, 0.2)) / 33.4e6, std::pow(10.0, 6.0 / 20), 1e-12);

    std::mt19937_64 rng(113);
    std::normal_distribution<double> n(0, 0.02);
    std::vector<PowerPoint> noisy;
    for(double dbm = -20; dbm <= 6; dbm += 1)
        noisy.push_back({dbm, c * std::sqrt(std::pow(10.0, dbm / 10)) * (1 + n(rng))});
    EXPECT_NEAR(fit_power_scaling(noisy).slope / c, 1, 0.02);
    EXPECT_THROW(fit_power_scaling(std::vector<PowerPoint>{{0, 1}}), ArgumentError);
}

TEST(Sidebands, WeightsAndSpectrum)
{
    const auto f = linspace(-200e6, 200e6, 4001);
    const auto bare = sideband_spectrum(0, 50e6, 0, 5e6, 3, f);
    EXPECT_NEAR(bare.y[2000], 1, 1e-15);
    EXPECT_NEAR(bare.y[2500], 1 / (1 + 400.0), 1e-12);  // 50 MHz off a 5 MHz FWHM line

    const auto s = sideband_spectrum(0, 50e6, 0.5, 10e3, 3, f);
    const double ratio = s.y[2500] / s.y[2000];
    const double j0 = numerics::bessel_j(0, 0.5), j1 = numerics::bessel_j(1, 0.5);
    EXPECT_NEAR(ratio, j1 * j1 / (j0 * j0), 1e-6);
    EXPECT_NEAR(ratio, 0.06664278519532364, 1e-6);

    for(double beta : {0.1, 0.5, 1.0, 2.0})
    {
        double total = 0;
        for(const auto& w : sideband_weights(beta, 10))
            total += w.weight;
        EXPECT_LE(total, 1 + 1e-12);
        EXPECT_NEAR(total, 1, 1e-6);
        const auto w3 = sideband_weights(beta, 3);
        EXPECT_EQ(w3.size(), 7u);
        EXPECT_DOUBLE_EQ(w3.front().weight, w3.back().weight);
    }
    EXPECT_THROW(sideband_weights(0.5, 11), ArgumentError);
}

TEST(Sidebands, DoubleLorentzianRecoversModulationFrequency)
{
    const double mod = 40e6;
    const auto f = linspace(20e6, 100e6, 1601);
    const auto s = sideband_spectrum(0, mod, 2.0, 2e6, 3, f);
    // Window holding the +1 and +2 sidebands.
    const auto r = specanalysis::fit_double_lorentzian(s, {f.front(), f.back()});
    ASSERT_FALSE(r.degenerate);
    EXPECT_NEAR((r.upper.f0 - r.lower.f0) / mod, 1, 1e-3);
}
