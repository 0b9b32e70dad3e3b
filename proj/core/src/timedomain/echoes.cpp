#include "sawkit/timedomain/echoes.hpp"

#include "sawkit/error.hpp"
#include "sawkit/numerics/dft.hpp"
#include "sawkit/numerics/stats.hpp"
#include "sawkit/numerics/units.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>

namespace sawkit::timedomain
{

namespace
{

constexpr double kSlopeTolerance = 1e-4;

// |sum_k c_k exp(+2 pi i k df tau)|, the band-limited interpolant of h.
class Interpolant
{
public:
    explicit Interpolant(const ImpulseResponse& ir)
        : coeffs_(numerics::dft(ir.h, numerics::Direction::forward))
        , df_(ir.freq_step())
    {
        const double scale = 1.0 / std::sqrt(static_cast<double>(coeffs_.size()));
        for(auto& c : coeffs_)
            c *= scale;
    }

    double operator()(double tau) const
    {
        const double dphi = 2 * std::numbers::pi * df_ * tau;
        const std::complex<double> step(std::cos(dphi), std::sin(dphi));
        std::complex<double> rot = 1;
        std::complex<double> sum = 0;
        for(std::size_t k = 0; k < coeffs_.size(); ++k)
        {
            sum += coeffs_[k] * rot;
            rot *= step;
            // Re-anchor periodically to stop rounding drift in the recurrence.
            if((k & 63) == 63)
            {
                const double phi = dphi * static_cast<double>(k + 1);
                rot = {std::cos(phi), std::sin(phi)};
            }
        }
        return std::abs(sum);
    }

private:
    std::vector<std::complex<double>> coeffs_;
    double df_;
};

} // namespace

std::size_t EchoTrain::detectable_count() const
{
    std::size_t count = 0;
    while(count < peaks.size() && peaks[count].detectable)
        ++count;
    return count;
}

EchoTrain detect_echoes(const ImpulseResponse& ir, double round_trip, int n_max, const EchoDetectOptions& options)
{
    if(ir.h.size() != ir.tau.size() || ir.h.size() < 2)
        throw ArgumentError("impulse response is malformed");
    if(n_max < 0)
        throw ArgumentError("n_max must be non-negative");
    const double dt = ir.dtau();
    if(!(round_trip >= 2 * dt))
        throw ResolutionError("round trip " + format_double(round_trip) + " s is shorter than two time steps ("
                              + format_double(2 * dt) + " s); widen the frequency span");

    std::vector<double> mag(ir.h.size());
    for(std::size_t i = 0; i < mag.size(); ++i)
        mag[i] = std::abs(ir.h[i]);

    EchoTrain train;
    train.round_trip = round_trip;
    train.noise_floor = numerics::median(mag);

    std::optional<Interpolant> interp;
    if(options.refine)
        interp.emplace(ir);

    const double floor_tau = round_trip / 4;
    const double range = std::pow(10.0, -options.dynamic_range_db / 20);
    for(int n = 0; n <= n_max; ++n)
    {
        const double centre = (2 * n + 1) * round_trip / 2;
        const double lo = std::max(centre - round_trip / 2, floor_tau);
        const double hi = centre + round_trip / 2;

        std::size_t best = mag.size();
        for(std::size_t i = 0; i < mag.size(); ++i)
        {
            if(ir.tau[i] < lo || ir.tau[i] > hi)
                continue;
            if(best == mag.size() || mag[i] > mag[best])
                best = i;
        }
        if(best == mag.size())
            throw ResolutionError("echo " + std::to_string(n) + " window [" + format_double(lo) + ", "
                                  + format_double(hi) + "] s holds no samples of the "
                                  + format_double(ir.record_length()) + " s record");

        EchoPeak peak{n, ir.tau[best], mag[best], true};
        if(interp)
        {
            const double a = std::max(lo, ir.tau[best] - dt);
            const double b = std::min(hi, ir.tau[best] + dt);
            const double t = numerics::golden_section_maximize([&](double x) { return (*interp)(x); }, a, b, dt * 1e-9);
            const double v = (*interp)(t);
            if(v > peak.h_max)
            {
                peak.tau = t;
                peak.h_max = v;
            }
        }
        const double first = train.peaks.empty() ? peak.h_max : train.peaks.front().h_max;
        peak.detectable = peak.h_max > options.noise_factor * train.noise_floor && peak.h_max >= range * first;
        train.peaks.push_back(peak);
    }
    return train;
}

void LossModel::validate() const
{
    if(!(T > 0 && T <= 1))
        throw ArgumentError("T must lie in (0, 1]");
    if(!(R > 0 && R <= 1))
        throw ArgumentError("R must lie in (0, 1]");
    if(!(alpha >= 0) || !std::isfinite(alpha))
        throw ArgumentError("alpha must be finite and non-negative");
    if(!(L > 0) || !std::isfinite(L))
        throw ArgumentError("L must be positive");
}

double LossModel::alpha_db_per_mm() const
{
    return numerics::per_m_power_to_db_per_mm(alpha);
}

double LossModel::echo_amplitude(int n) const
{
    return T * std::pow(R, n) * std::exp(-alpha * (2 * n + 1) * L / 2);
}

EchoDecayFit fit_echo_decay(const EchoTrain& train, double L, const DecayConstraint& known)
{
    if(!(L > 0))
        throw ArgumentError("propagation length must be positive");

    const std::size_t used = train.detectable_count();
    if(used < 2)
        throw ArgumentError("echo decay fit needs at least two detectable echoes (found " + std::to_string(used) + ")");

    std::vector<double> n(used), y(used);
    for(std::size_t i = 0; i < used; ++i)
    {
        if(!(train.peaks[i].h_max > 0))
            throw ArgumentError("echo " + std::to_string(i) + " has zero magnitude");
        n[i] = train.peaks[i].n;
        y[i] = 2 * std::log(train.peaks[i].h_max);
    }
    const auto line = numerics::fit_line(n, y);
    const double a = line.intercept;
    const double b = line.slope;
    if(b > kSlopeTolerance)
        throw NonphysicalError("echo train grows with n (slope " + format_double(b)
                               + "); a passive mirror cannot reflect more than it receives");

    LossModel model;
    model.L = L;
    if(const auto* r = std::get_if<KnownReflection>(&known))
    {
        if(!(r->R > 0 && r->R <= 1))
            throw ArgumentError("known R must lie in (0, 1]");
        model.R = r->R;
        double alpha = (2 * std::log(r->R) - b) / (2 * L);
        if(alpha < 0 && std::abs(2 * alpha * L) <= kSlopeTolerance)
            alpha = 0;
        if(alpha < 0)
            throw InconsistencyError("recovered alpha is negative (" + format_double(alpha)
                                     + " 1/m); the supplied R is too small for this train");
        model.alpha = alpha;
    }
    else
    {
        const double alpha = std::get<KnownAttenuation>(known).alpha;
        if(!(alpha >= 0) || !std::isfinite(alpha))
            throw ArgumentError("known alpha must be finite and non-negative");
        model.alpha = alpha;
        model.R = std::exp((b + 2 * alpha * L) / 2);
        if(model.R > 1 && model.R <= 1 + kSlopeTolerance)
            model.R = 1;
        if(!(model.R > 0 && model.R <= 1))
            throw InconsistencyError("recovered R = " + format_double(model.R) + " lies outside (0, 1]");
    }
    model.T = std::exp((a + model.alpha * L) / 2);
    if(!(model.T > 0 && model.T <= 1))
        throw InconsistencyError("recovered T = " + format_double(model.T) + " lies outside (0, 1]");

    return {model, a, b, used};
}

std::string write_echo_csv(const EchoTrain& train)
{
    std::string out = "n,tau_ns,h_max,2ln_h_max,detectable\n";
    for(const auto& p : train.peaks)
    {
        out += std::to_string(p.n) + "," + format_double(p.tau * 1e9) + "," + format_double(p.h_max) + ","
             + format_double(p.h_max > 0 ? 2 * std::log(p.h_max) : -INFINITY) + "," + (p.detectable ? "1" : "0")
             + "\n";
    }
    return out;
}

KeyValueBlock loss_summary(const LossModel& model)
{
    KeyValueBlock kv;
    kv.set("T", model.T);
    kv.set("R", model.R);
    kv.set("alpha_per_m", model.alpha);
    kv.set("alpha_db_per_mm", model.alpha_db_per_mm());
    kv.set("L_m", model.L);
    return kv;
}

} // namespace sawkit::timedomain
