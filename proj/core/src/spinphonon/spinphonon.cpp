#include "sawkit/spinphonon/spinphonon.hpp"

#include "sawkit/error.hpp"
#include "sawkit/numerics/units.hpp"

#include <cmath>
#include <numbers>

namespace sawkit::spinphonon
{

namespace
{

double cyclic(double omega)
{
    return omega / (2 * std::numbers::pi);
}

void require_positive(double v, const char* what)
{
    if(!(v > 0) || !std::isfinite(v))
        throw ArgumentError(std::string(what) + " must be positive and finite");
}

} // namespace

void SivParams::validate() const
{
    require_positive(gamma_s, "gamma_s");
    require_positive(lambda_so, "lambda_so");
    if(!std::isfinite(d_s) || !std::isfinite(f_s))
        throw ArgumentError("d_s and f_s must be finite");
    if(!(theta > 0 && theta < std::numbers::pi / 2))
        throw ArgumentError("theta must lie in (0, pi/2)");
}

void StrainTensor::validate() const
{
    for(double v : {eps_xx, eps_yy, eps_zz, eps_xy, eps_yz, eps_zx})
        if(!std::isfinite(v) || std::abs(v) > 1)
            throw ArgumentError("strain components must be finite with magnitude <= 1");
}

StrainTensor synthetic_strain_30khz()
{
    StrainTensor eps;
    eps.eps_xx = 1.9624311400616018e-10;
    return eps;
}

StrainTensor synthetic_strain_70khz()
{
    StrainTensor eps;
    eps.eps_yz = 3.501592818541289e-10;
    return eps;
}

void GaussianBeam::validate() const
{
    require_positive(w0, "beam waist");
    require_positive(lambda, "acoustic wavelength");
}

double GaussianBeam::rayleigh_range() const
{
    return std::numbers::pi * w0 * w0 / lambda;
}

double GaussianBeam::width(double z) const
{
    const double s = z / rayleigh_range();
    return w0 * std::sqrt(1 + s * s);
}

double resonance_axial_field(double omega_m, const SivParams& params)
{
    params.validate();
    require_positive(omega_m, "mode frequency");
    return cyclic(omega_m) / (2 * params.gamma_s);
}

double transverse_field(double omega_m, const SivParams& params)
{
    params.validate();
    require_positive(omega_m, "mode frequency");
    if(std::numbers::pi / 2 - params.theta < 1e-9)
        throw ArgumentError("theta too close to pi/2; tan(theta) diverges");
    return cyclic(omega_m) * std::tan(params.theta) / (2 * params.gamma_s);
}

double coupling_rate(const SivParams& params, double b_x, const StrainTensor& eps)
{
    params.validate();
    eps.validate();
    if(!(b_x >= 0) || !std::isfinite(b_x))
        throw ArgumentError("B_x must be finite and non-negative");
    const double egx = params.d_s * (eps.eps_xx - eps.eps_yy) + params.f_s * eps.eps_zx;
    const double egy = -2 * params.d_s * eps.eps_xy + params.f_s * eps.eps_yz;
    return 2 * params.gamma_s * b_x / params.lambda_so * std::hypot(egx, egy);
}

double beam_profile(const GaussianBeam& beam, double r, double z)
{
    beam.validate();
    const double w = beam.width(z);
    return beam.w0 / w * std::exp(-(r * r) / (w * w));
}

double single_phonon_power(double f0, double t0)
{
    require_positive(f0, "phonon frequency");
    require_positive(t0, "phonon duration");
    return numerics::kHbar * 2 * std::numbers::pi * f0 / t0;
}

double phonon_number(double p_rf, std::span<const double> loss_chain_db, double p0)
{
    require_positive(p0, "single-phonon power");
    if(!(p_rf >= 0) || !std::isfinite(p_rf))
        throw ArgumentError("RF power must be finite and non-negative");
    double p = p_rf;
    for(std::size_t i = 0; i < loss_chain_db.size(); ++i)
    {
        if(!(loss_chain_db[i] <= 0))
            throw ArgumentError("loss chain entry " + std::to_string(i) + " (" + format_double(loss_chain_db[i])
                                + " dB) is a gain; losses must be <= 0 dB");
        p *= numerics::db_convert(loss_chain_db[i], numerics::DbMode::db_to_power_ratio);
    }
    return p / p0;
}

double rabi_from_phonons(double n, double g)
{
    if(!(n >= 0))
        throw ArgumentError("phonon number must be non-negative");
    return std::sqrt(n) * g;
}

RabiChain rabi_chain(double p_rf_dbm,
                     std::span<const double> loss_chain_db,
                     double f0,
                     double t0,
                     const SivParams& params,
                     const StrainTensor& eps,
                     const GaussianBeam& beam,
                     const SivLocation& location,
                     std::optional<double> b_x)
{
    RabiChain chain;
    auto& b = chain.budget;
    b.omega0 = 2 * std::numbers::pi * f0;
    b.t0 = t0;
    b.p0 = single_phonon_power(f0, t0);
    b.p_rf = std::isinf(p_rf_dbm) && p_rf_dbm < 0 ? 0.0 : numerics::dbm_to_watts(p_rf_dbm);
    b.loss_chain_db.assign(loss_chain_db.begin(), loss_chain_db.end());
    b.n = phonon_number(b.p_rf, loss_chain_db, b.p0);
    b.p_acoustic = b.n * b.p0;

    chain.b_x = b_x ? *b_x : transverse_field(b.omega0, params);
    chain.g = coupling_rate(params, chain.b_x, eps);
    chain.beam_factor = beam_profile(beam, location.r, location.z);
    chain.rabi = rabi_from_phonons(b.n, chain.g * chain.beam_factor);
    return chain;
}

KeyValueBlock chain_summary(const RabiChain& chain)
{
    KeyValueBlock kv;
    kv.set("p_rf_w", chain.budget.p_rf);
    std::string losses;
    for(double l : chain.budget.loss_chain_db)
        losses += (losses.empty() ? "" : ",") + format_double(l);
    kv.set("loss_chain_db", losses.empty() ? std::string("none") : losses);
    kv.set("p_acoustic_w", chain.budget.p_acoustic);
    kv.set("f0_hz", chain.budget.omega0 / (2 * std::numbers::pi));
    kv.set("t0_s", chain.budget.t0);
    kv.set("p0_w", chain.budget.p0);
    kv.set("n_phonons", chain.budget.n);
    kv.set("b_x_t", chain.b_x);
    kv.set("g_hz", chain.g);
    kv.set("beam_factor", chain.beam_factor);
    kv.set("rabi_hz", chain.rabi);
    return kv;
}

SivParams siv_params_from(const KeyValueBlock& kv, const SivParams& defaults)
{
    SivParams p = defaults;
    if(kv.contains("gamma_s"))
        p.gamma_s = kv.get_double("gamma_s");
    if(kv.contains("lambda_so"))
        p.lambda_so = kv.get_double("lambda_so");
    if(kv.contains("d_s"))
        p.d_s = kv.get_double("d_s");
    if(kv.contains("f_s"))
        p.f_s = kv.get_double("f_s");
    if(kv.contains("theta_deg"))
        p.theta = kv.get_double("theta_deg") * std::numbers::pi / 180;
    p.validate();
    return p;
}

StrainTensor strain_from(const KeyValueBlock& kv, const StrainTensor& defaults)
{
    StrainTensor e = defaults;
    const std::pair<const char*, double*> fields[] = {
        {"eps_xx", &e.eps_xx}, {"eps_yy", &e.eps_yy}, {"eps_zz", &e.eps_zz},
        {"eps_xy", &e.eps_xy}, {"eps_yz", &e.eps_yz}, {"eps_zx", &e.eps_zx},
    };
    for(const auto& [key, dst] : fields)
        if(kv.contains(key))
            *dst = kv.get_double(key);
    e.validate();
    return e;
}

} // namespace sawkit::spinphonon
