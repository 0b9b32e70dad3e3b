#include "sawkit/error.hpp"
#include "sawkit/numerics/units.hpp"
#include "sawkit/timedomain/echoes.hpp"
#include "sawkit/timedomain/impulse.hpp"
#include "sawkit/timedomain/synth.hpp"

#include "../support/fixtures.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

using namespace sawkit;
using namespace sawkit::timedomain;
using ingest::PortPair;
using cd = std::complex<double>;

namespace
{

double alpha_of(double db_per_mm)
{
    return numerics::db_convert(db_per_mm, numerics::DbMode::db_per_mm_to_per_m_power);
}

ingest::NetworkSweep tone_sweep(double lo, double hi, std::size_t n, double tau0)
{
    ingest::NetworkSweep s;
    for(std::size_t k = 0; k < n; ++k)
    {
        const double f = lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(n - 1);
        s.freqs.push_back(f);
        s.s[PortPair::s21].push_back(std::polar(1.0, -2 * std::numbers::pi * std::fmod(f * tau0, 1.0)));
    }
    return s;
}

std::size_t argmax_abs(const std::vector<cd>& h)
{
    std::size_t best = 0;
    for(std::size_t i = 1; i < h.size(); ++i)
        if(std::abs(h[i]) > std::abs(h[best]))
            best = i;
    return best;
}

} // namespace

TEST(Window, Shapes)
{
    const auto none = window_weights(64, {Window::none});
    EXPECT_TRUE(std::all_of(none.begin(), none.end(), [](double w) { return w == 1; }));
    const auto rc = window_weights(101, {Window::raised_cosine, 0.1});
    EXPECT_DOUBLE_EQ(rc.front(), 0);
    EXPECT_DOUBLE_EQ(rc.back(), 0);
    EXPECT_DOUBLE_EQ(rc[50], 1);
    EXPECT_DOUBLE_EQ(rc[10], 1);
    EXPECT_NEAR(rc[5], 0.5, 1e-12);
    for(std::size_t i = 0; i < rc.size(); ++i)
        EXPECT_NEAR(rc[i], rc[rc.size() - 1 - i], 1e-15);
    EXPECT_THROW(window_weights(64, {Window::raised_cosine, 0.7}), ArgumentError);
}

TEST(ImpulseResponse, FlatSpectrumIsADelta)
{
    ingest::NetworkSweep s;
    for(int k = 0; k < 256; ++k)
    {
        s.freqs.push_back(1e9 + k * 1e6);
        s.s[PortPair::s21].push_back(1.0);
    }
    const auto ir = impulse_response(s, {Window::none});
    EXPECT_NEAR(std::abs(ir.h[0]), 1, 1e-12);
    for(std::size_t m = 1; m < ir.h.size(); ++m)
        EXPECT_NEAR(std::abs(ir.h[m]), 0, 1e-12);
    EXPECT_NEAR(ir.dtau(), 1.0 / (256 * 1e6), 1e-24);
    EXPECT_EQ(ir.source_band.first, 1e9);
}

TEST(ImpulseResponse, ShiftTheorem)
{
    for(auto w : {Window::none, Window::raised_cosine})
    {
        const auto s = tone_sweep(3.3e9, 4.3e9, 1001, 10e-9);
        const auto ir = impulse_response(s, {w});
        const std::size_t m = argmax_abs(ir.h);
        EXPECT_LE(std::abs(ir.tau[m] - 10e-9), ir.dtau() / 2 + 1e-15);
    }
}

TEST(ImpulseResponse, ParsevalWithoutWindow)
{
    std::mt19937_64 rng(71);
    std::normal_distribution<double> g;
    ingest::NetworkSweep s;
    for(int k = 0; k < 1000; ++k)
    {
        s.freqs.push_back(2e9 + k * 2e6);
        s.s[PortPair::s21].push_back({g(rng), g(rng)});
    }
    const auto ir = impulse_response(s, {Window::none});
    double eh = 0, es = 0;
    for(const auto& v : ir.h)
        eh += std::norm(v);
    for(const auto& v : s.at(PortPair::s21))
        es += std::norm(v);
    // h carries a 1/N normalization (flat arrival of amplitude A -> |h| = A).
    EXPECT_NEAR(eh * 1000 / es, 1, 1e-10);
}

TEST(ImpulseResponse, NonUniformGridIsAGridError)
{
    auto s = tone_sweep(1e9, 2e9, 64, 1e-9);
    s.freqs[10] += 1e3;
    EXPECT_THROW(impulse_response(s), GridError);
    EXPECT_THROW(time_gate(s, 0, 1e-6), GridError);
    auto no21 = tone_sweep(1e9, 2e9, 64, 1e-9);
    no21.s[PortPair::s11] = no21.s[PortPair::s21];
    no21.s.erase(PortPair::s21);
    EXPECT_THROW(impulse_response(no21), ArgumentError);
}

TEST(ImpulseResponse, EchoArrivalsLandOnPredictedDelays)
{
    LossModel m{0.3, 0.5, alpha_of(3.2), 130e-6};
    const auto sweep = synthesize_echo_network(fixtures::echo_fixture(m));
    const auto ir = impulse_response(sweep, {Window::none});
    const double rt = round_trip_time(m.L, fixtures::kVg);
    EXPECT_NEAR(rt, 42.2e-9, 0.05e-9);
    const auto train = detect_echoes(ir, rt, 3);
    for(const auto& p : train.peaks)
        EXPECT_LE(std::abs(p.tau - (2 * p.n + 1) * rt / 2), ir.dtau());
}

TEST(TimeGate, FullSupportIdentityAndEmptyGates)
{
    LossModel m{0.3, 0.5, alpha_of(3.2), 58.56e-6};
    auto c = fixtures::echo_fixture(m);
    c.crosstalk = 0.02;
    const auto s = synthesize_echo_network(c);
    const double record = 1.0 / s.step();
    const auto same = time_gate(s, 0, record);
    const auto& a = s.at(PortPair::s21);
    const auto& b = same.at(PortPair::s21);
    for(std::size_t i = 0; i < a.size(); ++i)
        EXPECT_LE(std::abs(a[i] - b[i]), 1e-10 * std::abs(a[i]) + 1e-15);

    const auto none = time_gate(s, 2 * record, 3 * record);
    for(const auto& v : none.at(PortPair::s21))
        EXPECT_EQ(v, cd(0));
    EXPECT_THROW(time_gate(s, 1e-9, 1e-9), ArgumentError);
    EXPECT_THROW(time_gate(s, 2e-9, 1e-9), ArgumentError);
}

TEST(TimeGate, RemovesCrosstalk)
{
    LossModel m{0.3, 0.1, alpha_of(3.2), 130e-6};
    auto clean_cfg = fixtures::echo_fixture(m);
    auto dirty_cfg = clean_cfg;
    dirty_cfg.crosstalk = {0.1, 0.05};
    const auto clean = synthesize_echo_network(clean_cfg);
    const auto dirty = synthesize_echo_network(dirty_cfg);
    const double tau1 = m.L / fixtures::kVg;
    const auto gated = time_gate(dirty, tau1 / 2, 1.0 / dirty.step());
    double num = 0, den = 0;
    for(std::size_t i = 0; i < clean.freqs.size(); ++i)
    {
        num += std::norm(gated.at(PortPair::s21)[i] - clean.at(PortPair::s21)[i]);
        den += std::norm(clean.at(PortPair::s21)[i]);
    }
    EXPECT_LE(std::sqrt(num / den), 1e-3);
}

TEST(DetectEchoes, SingleEchoAndResolutionErrors)
{
    LossModel m{0.4, 0.2, alpha_of(10), 80e-6};
    const auto sweep = synthesize_echo_network(fixtures::echo_fixture(m));
    const auto ir = impulse_response(sweep, {Window::none});
    const double rt = round_trip_time(m.L, fixtures::kVg);
    const auto one = detect_echoes(ir, rt, 0);
    ASSERT_EQ(one.peaks.size(), 1u);
    EXPECT_NEAR(one.peaks[0].h_max / m.echo_amplitude(0), 1, 1e-4);

    EXPECT_THROW(detect_echoes(ir, 1.5 * ir.dtau(), 2), ResolutionError);
    EXPECT_THROW(detect_echoes(ir, rt, 1000), ResolutionError);
    EXPECT_THROW(detect_echoes(ir, rt, -1), ArgumentError);
}

TEST(DetectEchoes, CrosstalkRegionIsExcluded)
{
    LossModel m{0.3, 0.3, alpha_of(3.2), 100e-6};
    auto c = fixtures::echo_fixture(m);
    c.crosstalk = 5.0;  // far larger than any echo
    const auto sweep = synthesize_echo_network(c);
    const double rt = round_trip_time(m.L, c.v_g);
    // Ungated, the crosstalk's interpolation sidelobes still touch echo 0.
    const auto raw = detect_echoes(impulse_response(sweep, {Window::none}), rt, 2);
    EXPECT_NEAR(raw.peaks[0].h_max / m.echo_amplitude(0), 1, 1e-2);
    EXPECT_GT(raw.peaks[0].tau, raw.round_trip / 4);
    const auto gated = detect_echoes(impulse_response(time_gate(sweep, rt / 4, 1.0 / sweep.step()), {Window::none}), rt, 2);
    EXPECT_NEAR(gated.peaks[0].h_max / m.echo_amplitude(0), 1, 1e-5);
}

TEST(DetectEchoes, ConsecutiveRatioMatchesModel)
{
    std::mt19937_64 rng(81);
    std::uniform_real_distribution<double> r(0.1, 0.6), a(1, 20), l(40e-6, 130e-6);
    for(int trial = 0; trial < 20; ++trial)
    {
        LossModel m{0.3, r(rng), alpha_of(a(rng)), l(rng)};
        const auto train = fixtures::detect_fixture(fixtures::echo_fixture(m), 6);
        const double ratio = m.R * std::exp(-m.alpha * m.L);
        for(std::size_t n = 0; n + 1 < train.detectable_count(); ++n)
            EXPECT_NEAR(train.peaks[n + 1].h_max / train.peaks[n].h_max / ratio, 1, 1e-3) << trial << " n=" << n;
    }
}

TEST(DetectEchoes, NoiseFloorFlagsLateEchoes)
{
    LossModel m{0.3, 0.3, alpha_of(3.2), 130e-6};
    auto c = fixtures::echo_fixture(m);
    c.noise_sigma = 0.02;
    c.seed = 5;
    const auto ir = impulse_response(synthesize_echo_network(c), {Window::none});
    const auto train = detect_echoes(ir, round_trip_time(m.L, c.v_g), 12);
    EXPECT_GE(train.detectable_count(), 2u);
    EXPECT_LT(train.detectable_count(), train.peaks.size());
    for(const auto& p : train.peaks)
        if(!p.detectable)
            EXPECT_LE(p.h_max, 3 * train.noise_floor + 1e-3 * train.peaks[0].h_max);
}

TEST(FitEchoDecay, DeviceFixtureWithKnownR)
{
    LossModel m{0.3, 0.1, alpha_of(3.2), 130e-6};
    const auto train = fixtures::detect_fixture(fixtures::echo_fixture(m));
    const auto fit = fit_echo_decay(train, m.L, KnownReflection{0.1});
    EXPECT_NEAR(fit.model.alpha / m.alpha, 1, 0.005);
    EXPECT_NEAR(fit.model.T / m.T, 1, 0.01);
    EXPECT_NEAR(fit.model.alpha_db_per_mm(), 3.2, 0.016);
    EXPECT_GE(fit.echoes_used, 2u);
}

TEST(FitEchoDecay, MeasuredLossTargets)
{
    for(double db : {3.2, 35.2})
    {
        LossModel m{0.3, 0.5, alpha_of(db), 130e-6};
        const auto train = fixtures::detect_fixture(fixtures::echo_fixture(m));
        const auto fit = fit_echo_decay(train, m.L, KnownReflection{m.R});
        EXPECT_NEAR(fit.model.alpha_db_per_mm() / db, 1, 0.005) << db;
    }
}

TEST(FitEchoDecay, KnownAlphaRecoversR)
{
    LossModel m{0.25, 0.35, alpha_of(8), 90e-6};
    const auto train = fixtures::detect_fixture(fixtures::echo_fixture(m));
    const auto fit = fit_echo_decay(train, m.L, KnownAttenuation{m.alpha});
    EXPECT_NEAR(fit.model.R / m.R, 1, 1e-3);
    EXPECT_NEAR(fit.model.T / m.T, 1, 1e-3);
}

TEST(FitEchoDecay, LosslessPerfectMirrorIsFlat)
{
    LossModel m{0.3, 1.0, 0.0, 130e-6};
    const auto train = fixtures::detect_fixture(fixtures::echo_fixture(m), 5);
    const auto fit = fit_echo_decay(train, m.L, KnownReflection{1.0});
    EXPECT_NEAR(fit.model.alpha, 0, 1e-6);
    EXPECT_GE(fit.model.alpha, 0);
    EXPECT_NEAR(fit.model.T, 0.3, 1e-3);
}

TEST(FitEchoDecay, Errors)
{
    EchoTrain growing;
    growing.round_trip = 1e-8;
    for(int n = 0; n < 4; ++n)
        growing.peaks.push_back({n, (2 * n + 1) * 5e-9, 0.1 * std::pow(1.5, n), true});
    EXPECT_THROW(fit_echo_decay(growing, 1e-4, KnownReflection{0.5}), NonphysicalError);

    EchoTrain decaying = growing;
    for(int n = 0; n < 4; ++n)
        decaying.peaks[static_cast<std::size_t>(n)].h_max = 0.1 * std::pow(0.5, n);
    // Echoes halve each trip but R = 0.1 would need them to drop tenfold: alpha < 0.
    EXPECT_THROW(fit_echo_decay(decaying, 1e-4, KnownReflection{0.1}), InconsistencyError);
    EXPECT_THROW(fit_echo_decay(decaying, 1e-4, KnownReflection{1.5}), ArgumentError);
    EXPECT_THROW(fit_echo_decay(decaying, 0, KnownReflection{0.5}), ArgumentError);
    // T = exp((a + alpha L) / 2) > 1 for a huge supplied alpha.
    EXPECT_THROW(fit_echo_decay(decaying, 1e-4, KnownAttenuation{1e5}), InconsistencyError);

    EchoTrain short_train = decaying;
    short_train.peaks[1].detectable = false;
    EXPECT_THROW(fit_echo_decay(short_train, 1e-4, KnownReflection{0.5}), ArgumentError);
}

TEST(FitEchoDecay, SeededFamilyRecoversAlphaAndT)
{
    for(const auto& c : fixtures::echo_family(30, 91))
    {
        const auto fit = fit_echo_decay(c.train, c.model.L, KnownReflection{c.model.R});
        EXPECT_NEAR(fit.model.alpha / c.model.alpha, 1, 0.01);
        EXPECT_NEAR(fit.model.T / c.model.T, 1, 0.01);
    }
}

TEST(Synthesis, SingleArrivalCrosstalkOnlyAndDeterminism)
{
    LossModel single{0.4, 0.0, alpha_of(5), 60e-6};
    const auto ir = impulse_response(synthesize_echo_network(fixtures::echo_fixture(single)), {Window::none});
    const auto train = detect_echoes(ir, round_trip_time(single.L, fixtures::kVg), 1);
    EXPECT_NEAR(train.peaks[0].h_max * train.peaks[0].h_max / (0.16 * std::exp(-single.alpha * single.L)), 1, 1e-6);
    EXPECT_LT(train.peaks[1].h_max, 1e-5 * train.peaks[0].h_max);

    LossModel dark{0.0, 0.5, 0.0, 60e-6};
    auto c = fixtures::echo_fixture(dark);
    c.crosstalk = {0.01, -0.02};
    const auto flat = synthesize_echo_network(c);
    for(const auto& v : flat.at(PortPair::s21))
        EXPECT_EQ(v, c.crosstalk);

    auto noisy = fixtures::echo_fixture({0.3, 0.3, alpha_of(3.2), 60e-6});
    noisy.noise_sigma = 0.01;
    noisy.seed = 42;
    const auto a = synthesize_echo_network(noisy);
    const auto b = synthesize_echo_network(noisy);
    EXPECT_EQ(a.at(PortPair::s21), b.at(PortPair::s21));
    noisy.seed = 43;
    EXPECT_NE(a.at(PortPair::s21), synthesize_echo_network(noisy).at(PortPair::s21));

    noisy.n_points = 15;
    EXPECT_THROW(synthesize_echo_network(noisy), ArgumentError);
}

TEST(Synthesis, NoiseHasRequestedRms)
{
    LossModel dark{0.0, 0.5, 0.0, 60e-6};
    auto c = fixtures::echo_fixture(dark);
    c.noise_sigma = 0.05;
    c.seed = 7;
    double e = 0;
    const auto sweep = synthesize_echo_network(c);
    const auto& s = sweep.at(PortPair::s21);
    for(const auto& v : s)
        e += std::norm(v);
    EXPECT_NEAR(std::sqrt(e / static_cast<double>(s.size())), 0.05, 0.05 * 0.05);
}

TEST(Reports, EchoCsvAndLossSummary)
{
    EchoTrain t;
    t.round_trip = 42e-9;
    t.peaks = {{0, 21e-9, 0.25, true}, {1, 63e-9, 0.05, false}};
    const auto csv = write_echo_csv(t);
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "n,tau_ns,h_max,2ln_h_max,detectable");
    EXPECT_NE(csv.find("\n0,21,0.25,"), std::string::npos);
    EXPECT_NE(csv.find(",0\n"), std::string::npos);

    LossModel m{0.3, 0.1, alpha_of(3.2), 130e-6};
    const auto kv = loss_summary(m);
    EXPECT_NEAR(kv.get_double("alpha_per_m"), 736.8272297580947, 1e-9);
    EXPECT_NEAR(kv.get_double("alpha_db_per_mm"), 3.2, 1e-12);
    EXPECT_DOUBLE_EQ(kv.get_double("L_m"), 130e-6);
}
