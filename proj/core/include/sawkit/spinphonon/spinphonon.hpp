#pragma once

#include "sawkit/kv.hpp"

#include <numbers>
#include <optional>
#include <span>
#include <vector>

namespace sawkit::spinphonon
{

// SiV- ground-state parameters. gamma_s in Hz/T, so "2 gamma_s B = omega"
// conditions are evaluated with the cyclic frequency f = omega / 2 pi.
struct SivParams
{
    double gamma_s = 14e9;      // Hz/T
    double lambda_so = 46e9;    // Hz
    double d_s = 1.3e15;        // Hz/strain
    double f_s = -1.7e15;       // Hz/strain
    double theta = 54.7 * std::numbers::pi / 180;  // rad

    // Throws ArgumentError unless gamma_s > 0, lambda_so > 0, theta in (0, pi/2).
    void validate() const;
};

// Per-phonon strain in the SiV frame.
struct StrainTensor
{
    double eps_xx = 0;
    double eps_yy = 0;
    double eps_zz = 0;
    double eps_xy = 0;
    double eps_yz = 0;
    double eps_zx = 0;

    void validate() const;
};

// Synthetic tensors back-solved to g = 30 kHz and g = 70 kHz with the default
// SivParams at B_x = transverse_field(2 pi * 3.83 GHz). Not FEM results.
StrainTensor synthetic_strain_30khz();
StrainTensor synthetic_strain_70khz();

struct GaussianBeam
{
    double w0 = 6.8e-6;      // m
    double lambda = 1.1e-6;  // m
    double u_max = 1;

    void validate() const;
    double rayleigh_range() const;  // pi w0^2 / lambda
    double width(double z) const;   // w0 sqrt(1 + (z / z_R)^2)
};

struct PhononBudget
{
    double omega0 = 0;      // rad/s
    double t0 = 0;          // s
    double p0 = 0;          // W
    double p_rf = 0;        // W
    double p_acoustic = 0;  // W
    double n = 0;
    std::vector<double> loss_chain_db;
};

// B_z = f_m / (2 gamma_s).
double resonance_axial_field(double omega_m, const SivParams& params);

// B_x = f_m tan(theta) / (2 gamma_s). Throws ArgumentError when theta is
// within 1e-9 rad of pi/2.
double transverse_field(double omega_m, const SivParams& params);

// g = (2 gamma_s B_x / lambda_so) sqrt((d_s (exx - eyy) + f_s ezx)^2 + (-2 d_s exy + f_s eyz)^2)
double coupling_rate(const SivParams& params, double b_x, const StrainTensor& eps);

// u(r, z) / u_max = (w0 / w(z)) exp(-r^2 / w(z)^2)
double beam_profile(const GaussianBeam& beam, double r, double z);

// p0 = hbar 2 pi f0 / t0
double single_phonon_power(double f0, double t0);

// n = p_rf prod 10^(dB_i / 10) / p0. Throws ArgumentError for a positive
// (gain) entry or p0 <= 0.
double phonon_number(double p_rf, std::span<const double> loss_chain_db, double p0);

double rabi_from_phonons(double n, double g);

struct SivLocation
{
    double r = 0;  // m, off the beam axis
    double z = 0;  // m, from the focus
};

struct RabiChain
{
    PhononBudget budget;
    double b_x = 0;           // T
    double g = 0;             // Hz, at the focus
    double beam_factor = 1;   // u / u_max at the SiV
    double rabi = 0;          // Hz, sqrt(n) g u/u_max
};

// Budget from RF power to sqrt(n) g. B_x defaults to transverse_field(2 pi f0).
RabiChain rabi_chain(double p_rf_dbm,
                     std::span<const double> loss_chain_db,
                     double f0,
                     double t0,
                     const SivParams& params,
                     const StrainTensor& eps,
                     const GaussianBeam& beam,
                     const SivLocation& location,
                     std::optional<double> b_x = std::nullopt);

KeyValueBlock chain_summary(const RabiChain& chain);

// Readers for the key-value config: keys gamma_s, lambda_so, d_s, f_s,
// theta_deg and eps_xx ... eps_zx. Missing keys keep the given defaults.
SivParams siv_params_from(const KeyValueBlock& kv, const SivParams& defaults = {});
StrainTensor strain_from(const KeyValueBlock& kv, const StrainTensor& defaults = {});

} // namespace sawkit::spinphonon
