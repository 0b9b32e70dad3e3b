#pragma once

#include "sawkit/kv.hpp"
#include "sawkit/timedomain/impulse.hpp"

#include <string>
#include <variant>
#include <vector>

namespace sawkit::timedomain
{

struct EchoPeak
{
    int n = 0;
    double tau = 0;    // s
    double h_max = 0;  // |h| at the peak
    bool detectable = true;
};

struct EchoTrain
{
    std::vector<EchoPeak> peaks;  // n = 0, 1, ... consecutive
    double round_trip = 0;        // s
    double noise_floor = 0;       // median |h|

    // Leading run of detectable echoes starting at n = 0.
    std::size_t detectable_count() const;
};

struct EchoDetectOptions
{
    double noise_factor = 3.0;       // detectable above noise_factor * median |h|
    double dynamic_range_db = 60.0;  // ... and within this range of echo 0
    bool refine = true;              // band-limited interpolation between samples
};

// Echo n is searched in a window of width `round_trip` centred on
// (2n + 1) * round_trip / 2; samples before round_trip / 4 are excluded
// (direct crosstalk). Throws ResolutionError when round_trip < 2 * dtau or
// a window holds no samples.
EchoTrain detect_echoes(const ImpulseResponse& ir, double round_trip, int n_max, const EchoDetectOptions& options = {});

// |h_max(n)|^2 = T^2 R^(2n) exp(-alpha (2n + 1) L)
struct LossModel
{
    double T = 1;      // IDT power conversion efficiency, (0, 1]
    double R = 1;      // mirror power reflection, (0, 1]
    double alpha = 0;  // power attenuation, 1/m
    double L = 1;      // propagation length, m

    // Throws ArgumentError when a field is out of range.
    void validate() const;
    double alpha_db_per_mm() const;
    // Amplitude of echo n.
    double echo_amplitude(int n) const;
};

struct KnownReflection
{
    double R;
};

struct KnownAttenuation
{
    double alpha;  // 1/m
};

using DecayConstraint = std::variant<KnownReflection, KnownAttenuation>;

struct EchoDecayFit
{
    LossModel model;
    double intercept = 0;  // a in 2 ln h = a + b n
    double slope = 0;      // b
    std::size_t echoes_used = 0;
};

// Line fit of 2 ln h_max(n) over the leading detectable echoes, with R or
// alpha supplied. Throws ArgumentError for fewer than two usable echoes,
// NonphysicalError for a growing train, InconsistencyError when T or the
// recovered R leaves (0, 1] or alpha comes out negative.
EchoDecayFit fit_echo_decay(const EchoTrain& train, double L, const DecayConstraint& known);

// n,tau_ns,h_max,2ln_h_max,detectable
std::string write_echo_csv(const EchoTrain& train);

// T, R, alpha_per_m, alpha_db_per_mm, L_m.
KeyValueBlock loss_summary(const LossModel& model);

} // namespace sawkit::timedomain
