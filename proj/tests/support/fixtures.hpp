#pragma once

#include "sawkit/numerics/units.hpp"
#include "sawkit/timedomain/echoes.hpp"
#include "sawkit/timedomain/synth.hpp"

#include <random>
#include <vector>

namespace sawkit::fixtures
{

inline constexpr double kVg = 6161.0;

// Echo fixture on the 1.8-5.8 GHz band, 4096 points, IDT passband spanning
// the whole band.
inline timedomain::EchoSynthesis echo_fixture(const timedomain::LossModel& model)
{
    timedomain::EchoSynthesis c;
    c.model = model;
    c.v_g = kVg;
    c.f_lo = 1.8e9;
    c.f_hi = 5.8e9;
    c.n_points = 4096;
    return c;
}

struct EchoCase
{
    timedomain::LossModel model;
    timedomain::EchoTrain train;
};

inline timedomain::EchoTrain detect_fixture(const timedomain::EchoSynthesis& c, int n_max = 7)
{
    const auto sweep = timedomain::synthesize_echo_network(c);
    const auto ir = timedomain::impulse_response(sweep, {timedomain::Window::none});
    return timedomain::detect_echoes(ir, timedomain::round_trip_time(c.model.L, c.v_g), n_max);
}

// Random models T in [0.1, 0.5], R in [0.05, 0.3], alpha in [1, 40] dB/mm,
// L in [30, 130] um, redrawn until at least four echoes are detectable.
inline std::vector<EchoCase> echo_family(std::size_t count, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> t(0.1, 0.5), r(0.05, 0.3), a(1, 40), l(30e-6, 130e-6);
    std::vector<EchoCase> out;
    while(out.size() < count)
    {
        timedomain::LossModel m;
        m.T = t(rng);
        m.R = r(rng);
        m.alpha = numerics::db_convert(a(rng), numerics::DbMode::db_per_mm_to_per_m_power);
        m.L = l(rng);
        auto train = detect_fixture(echo_fixture(m));
        if(train.detectable_count() >= 4)
            out.push_back({m, std::move(train)});
    }
    return out;
}

} // namespace sawkit::fixtures
