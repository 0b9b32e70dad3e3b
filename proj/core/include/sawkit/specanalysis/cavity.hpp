#pragma once

#include <optional>
#include <span>

namespace sawkit::specanalysis
{

// Acoustic Fabry-Perot cavity between two IDT reflectors.
struct CavityGeometry
{
    double d = 0;              // IDT separation, m
    double lambda0 = 0;        // acoustic wavelength (IDT pitch), m
    int n_mirror = 1;          // electrodes per reflector
    double v_g = 0;            // group velocity, m/s
    std::optional<double> v_p; // phase velocity, m/s

    // Throws ArgumentError unless everything is positive and n_mirror >= 1.
    void validate() const;
};

// Phase velocities with the surface electrically open and shorted.
struct VelocityPair
{
    double v_open = 0;
    double v_short = 0;
};

enum class CouplingRegime
{
    undercoupled,  // beta = (1 - |S11|min) / (1 + |S11|min)
    overcoupled,   // beta = (1 + |S11|min) / (1 - |S11|min)
};

// Median of adjacent differences of sorted peak frequencies (>= 2 peaks).
double estimate_fsr(std::span<const double> peak_freqs);

// L_eff = v_g / (2 fsr) = d + 2 L_p. Throws InconsistencyError if L_eff < d.
double penetration_depth(double fsr, double v_g, double d);

// Per-electrode amplitude reflectivity from L_p = lambda0 / (4 r_s).
// Throws InconsistencyError when the result is not inside (0, 1).
double mirror_reflectivity(double penetration_depth, double lambda0);

// pi (d + L_p) / (lambda0 (1 - tanh(N r_s))). Throws ArgumentError when
// N r_s >= 20 (1 - tanh underflows to zero).
double q_mirror(const CavityGeometry& geom, double penetration_depth, double r_s);

// omega / (2 v_g alpha) with alpha the power attenuation in 1/m converted
// from dB/mm. Throws ArgumentError for alpha = 0 or non-positive inputs.
double q_propagation(double f, double v_g, double alpha_db_per_mm);

// (sum 1/Q_i)^-1. Throws ArgumentError for an empty list or Q <= 0.
double combine_q(std::span<const double> qs);

// Q_i = (1 + beta) Q_L from the depth of the reflection dip.
double q_internal_from_reflection(double q_loaded, double s11_min,
                                  CouplingRegime regime = CouplingRegime::undercoupled);

// Q_total lambda / (2 (d + 2 L_p)).
double finesse(double q_total, double lambda, double d, double penetration_depth);

// v_p = f0 lambda0.
double phase_velocity(double f0, double lambda0);

// 2 (v_open - v_short) / v_open. Throws ArgumentError if v_short > v_open.
double k_squared(const VelocityPair& v);

} // namespace sawkit::specanalysis
