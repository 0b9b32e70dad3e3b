#include "sawkit/specanalysis/cavity.hpp"

#include "sawkit/error.hpp"
#include "sawkit/numerics/stats.hpp"
#include "sawkit/numerics/units.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

namespace sawkit::specanalysis
{

namespace
{

void require_positive(double v, const char* what)
{
    if(!(v > 0) || !std::isfinite(v))
        throw ArgumentError(std::string(what) + " must be positive and finite");
}

} // namespace

void CavityGeometry::validate() const
{
    require_positive(d, "d");
    require_positive(lambda0, "lambda0");
    require_positive(v_g, "v_g");
    if(v_p)
        require_positive(*v_p, "v_p");
    if(n_mirror < 1)
        throw ArgumentError("n_mirror must be >= 1");
}

double estimate_fsr(std::span<const double> peak_freqs)
{
    if(peak_freqs.size() < 2)
        throw ArgumentError("free spectral range needs at least two peaks (found "
                            + std::to_string(peak_freqs.size()) + ")");
    std::vector<double> diffs;
    for(std::size_t i = 1; i < peak_freqs.size(); ++i)
    {
        const double df = peak_freqs[i] - peak_freqs[i - 1];
        if(!(df > 0))
            throw ArgumentError("peak frequencies must be sorted and distinct");
        diffs.push_back(df);
    }
    return numerics::median(diffs);
}

double penetration_depth(double fsr, double v_g, double d)
{
    require_positive(fsr, "fsr");
    require_positive(v_g, "v_g");
    require_positive(d, "d");
    const double l_eff = v_g / (2 * fsr);
    if(l_eff < d)
        throw InconsistencyError("effective cavity length " + std::to_string(l_eff * 1e6)
                                 + " um is shorter than the IDT separation d; check v_g or d");
    return (l_eff - d) / 2;
}

double mirror_reflectivity(double penetration_depth, double lambda0)
{
    require_positive(penetration_depth, "penetration depth");
    require_positive(lambda0, "lambda0");
    const double r_s = lambda0 / (4 * penetration_depth);
    if(!(r_s < 1))
        throw InconsistencyError("electrode reflectivity " + std::to_string(r_s) + " is not below 1");
    return r_s;
}

double q_mirror(const CavityGeometry& geom, double penetration_depth, double r_s)
{
    geom.validate();
    require_positive(penetration_depth, "penetration depth");
    require_positive(r_s, "r_s");
    const double x = geom.n_mirror * r_s;
    if(!(x < 20))
        throw ArgumentError("N_mirror * r_s >= 20: 1 - tanh(N r_s) underflows");
    // 1 - tanh(x) without cancellation.
    const double one_minus_tanh = 2.0 / (std::exp(2 * x) + 1.0);
    return std::numbers::pi * (geom.d + penetration_depth) / (geom.lambda0 * one_minus_tanh);
}

double q_propagation(double f, double v_g, double alpha_db_per_mm)
{
    require_positive(f, "f");
    require_positive(v_g, "v_g");
    if(alpha_db_per_mm == 0)
        throw ArgumentError("alpha = 0 gives an unbounded propagation Q");
    require_positive(alpha_db_per_mm, "alpha");
    const double alpha = numerics::db_convert(alpha_db_per_mm, numerics::DbMode::db_per_mm_to_per_m_power);
    return 2 * std::numbers::pi * f / (2 * v_g * alpha);
}

double combine_q(std::span<const double> qs)
{
    if(qs.empty())
        throw ArgumentError("combine_q needs at least one Q");
    double inv = 0;
    for(double q : qs)
    {
        require_positive(q, "Q");
        inv += 1.0 / q;
    }
    return 1.0 / inv;
}

double q_internal_from_reflection(double q_loaded, double s11_min, CouplingRegime regime)
{
    require_positive(q_loaded, "Q_loaded");
    if(!(s11_min >= 0 && s11_min <= 1))
        throw ArgumentError("|S11| minimum must lie in [0, 1]");
    double beta = 0;
    if(regime == CouplingRegime::undercoupled)
        beta = (1 - s11_min) / (1 + s11_min);
    else
    {
        if(s11_min == 1)
            throw ArgumentError("overcoupled convention is undefined for |S11| minimum = 1");
        beta = (1 + s11_min) / (1 - s11_min);
    }
    return (1 + beta) * q_loaded;
}

double finesse(double q_total, double lambda, double d, double penetration_depth)
{
    require_positive(q_total, "Q_total");
    require_positive(lambda, "lambda");
    require_positive(d, "d");
    if(!(penetration_depth >= 0))
        throw ArgumentError("penetration depth must be non-negative");
    return q_total * lambda / (2 * (d + 2 * penetration_depth));
}

double phase_velocity(double f0, double lambda0)
{
    require_positive(f0, "f0");
    require_positive(lambda0, "lambda0");
    return f0 * lambda0;
}

double k_squared(const VelocityPair& v)
{
    require_positive(v.v_open, "v_open");
    require_positive(v.v_short, "v_short");
    if(v.v_short > v.v_open)
        throw ArgumentError("v_short exceeds v_open");
    const double k2 = 2 * (v.v_open - v.v_short) / v.v_open;
    if(!(k2 < 1))
        throw ArgumentError("v_short <= v_open / 2 gives k^2 >= 1");
    return k2;
}

} // namespace sawkit::specanalysis
