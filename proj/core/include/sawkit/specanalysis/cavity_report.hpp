#pragma once

#include "sawkit/ingest/network_sweep.hpp"
#include "sawkit/kv.hpp"
#include "sawkit/specanalysis/cavity.hpp"
#include "sawkit/specanalysis/lorentzian.hpp"

#include <optional>
#include <string>
#include <vector>

namespace sawkit::specanalysis
{

enum class TraceSource
{
    automatic,  // |S11| when present and not constant, else |S21|
    s11,        // reflection dips
    s21,        // transmission peaks
};

struct CavityReportOptions
{
    TraceSource source = TraceSource::automatic;
    double min_prominence_fraction = 0.1;  // of the trace's max - min
    double min_spacing_hz = 0;             // 0: five grid steps
    double window_fraction = 0.4;          // fit window half-width, in units of the local mode spacing
    std::optional<double> alpha_db_per_mm; // enables q_propagation / q_budget
    CouplingRegime coupling = CouplingRegime::undercoupled;
};

struct ModeRow
{
    LorentzianPeak peak;
    double q_loaded = 0;
    std::optional<double> q_internal;  // only for reflection traces
};

struct CavityReport
{
    std::vector<ModeRow> modes;
    double fsr = 0;
    double penetration_depth = 0;
    double r_s = 0;
    double q_mirror = 0;
    std::optional<double> q_propagation;
    std::optional<double> q_budget;  // combine_q(q_propagation, q_mirror)
    double finesse = 0;
    std::size_t reference_mode = 0;  // most prominent mode; feeds finesse and q_propagation
    ingest::PortPair source = ingest::PortPair::s21;
};

// find_peaks -> fit_lorentzian per mode -> estimate_fsr -> penetration_depth
// -> mirror_reflectivity -> q_mirror (+ q_propagation when alpha is given)
// -> q_internal_from_reflection (reflection traces) -> finesse.
// Component errors are rethrown with the mode index and frequency attached.
CavityReport cavity_report(const ingest::NetworkSweep& sweep,
                           const CavityGeometry& geom,
                           const CavityReportOptions& options = {});

// One row per mode: f0_hz,fwhm_hz,q_loaded,q_internal (empty when unknown).
std::string write_cavity_csv(const CavityReport& report);

KeyValueBlock cavity_summary(const CavityReport& report);

// Reflection fixture: |S11| = 1 - (1 - s11_min) * sum_m L(f; f_m, f_m/Q)
// with f_m = first_mode + m * fsr, phase zero. S11 only.
ingest::NetworkSweep synthesize_reflection_comb(std::span<const double> freqs,
                                                double first_mode,
                                                double fsr,
                                                std::size_t n_modes,
                                                double q_loaded,
                                                double s11_min);

} // namespace sawkit::specanalysis
