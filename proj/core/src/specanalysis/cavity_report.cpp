#include "sawkit/specanalysis/cavity_report.hpp"

#include "sawkit/error.hpp"
#include "sawkit/numerics/models.hpp"
#include "sawkit/specanalysis/peaks.hpp"

#include <algorithm>
#include <cmath>

namespace sawkit::specanalysis
{

using ingest::PortPair;
using numerics::Series;

namespace
{

bool has_variation(const std::vector<std::complex<double>>& v)
{
    if(v.empty())
        return false;
    const double first = std::abs(v.front());
    return std::any_of(v.begin(), v.end(), [&](const auto& c) { return std::abs(c) != first; });
}

PortPair pick_source(const ingest::NetworkSweep& sweep, TraceSource source)
{
    switch(source)
    {
    case TraceSource::s11:
        sweep.at(PortPair::s11);
        return PortPair::s11;
    case TraceSource::s21:
        sweep.at(PortPair::s21);
        return PortPair::s21;
    case TraceSource::automatic:
        break;
    }
    if(sweep.has(PortPair::s11) && has_variation(sweep.at(PortPair::s11)))
        return PortPair::s11;
    if(sweep.has(PortPair::s21))
        return PortPair::s21;
    throw ArgumentError("cavity report needs S11 or S21 data");
}

std::string mode_tag(std::size_t index, double f)
{
    return "mode " + std::to_string(index) + " (f ~ " + format_double(f) + " Hz): ";
}

} // namespace

CavityReport cavity_report(const ingest::NetworkSweep& sweep, const CavityGeometry& geom, const CavityReportOptions& options)
{
    sweep.validate();
    geom.validate();
    if(sweep.freqs.size() < 3)
        throw ArgumentError("cavity report needs at least three frequency points");

    CavityReport report;
    report.source = pick_source(sweep, options.source);
    const bool reflection = report.source == PortPair::s11;

    Series trace;
    trace.x = sweep.freqs;
    trace.x_unit = "Hz";
    for(const auto& v : sweep.at(report.source))
        trace.y.push_back(std::abs(v));

    // Dips in |S11| become peaks for the finder.
    Series search = trace;
    if(reflection)
        for(auto& v : search.y)
            v = -v;

    const auto [lo, hi] = std::minmax_element(search.y.begin(), search.y.end());
    const double step = sweep.step();
    const double spacing = options.min_spacing_hz > 0 ? options.min_spacing_hz : 5 * step;
    const auto peaks = find_peaks(search, options.min_prominence_fraction * (*hi - *lo), spacing);
    if(peaks.size() < 2)
        throw ArgumentError("free spectral range needs at least two resolvable modes (found "
                            + std::to_string(peaks.size()) + ")");

    std::size_t most_prominent = 0;
    for(std::size_t i = 0; i < peaks.size(); ++i)
    {
        double local = 0;
        if(i > 0)
            local = peaks[i].x - peaks[i - 1].x;
        if(i + 1 < peaks.size())
            local = local > 0 ? std::min(local, peaks[i + 1].x - peaks[i].x) : peaks[i + 1].x - peaks[i].x;
        const double half = options.window_fraction * local;

        ModeRow row;
        try
        {
            row.peak = fit_lorentzian(trace, {peaks[i].x - half, peaks[i].x + half}).peak;
            row.q_loaded = row.peak.q();
            if(reflection)
            {
                const double s11_min = std::clamp(row.peak.offset + row.peak.amplitude, 0.0, 1.0);
                row.q_internal = q_internal_from_reflection(row.q_loaded, s11_min, options.coupling);
            }
        }
        catch(const numerics::FitError& e)
        {
            throw numerics::FitError(mode_tag(i, peaks[i].x) + e.what(), e.diagnostics());
        }
        catch(const ArgumentError& e)
        {
            throw ArgumentError(mode_tag(i, peaks[i].x) + e.what());
        }
        report.modes.push_back(row);
        if(peaks[i].prominence > peaks[most_prominent].prominence)
            most_prominent = i;
    }
    report.reference_mode = most_prominent;

    std::vector<double> centres;
    for(const auto& m : report.modes)
        centres.push_back(m.peak.f0);
    std::sort(centres.begin(), centres.end());
    report.fsr = estimate_fsr(centres);
    report.penetration_depth = penetration_depth(report.fsr, geom.v_g, geom.d);
    report.r_s = mirror_reflectivity(report.penetration_depth, geom.lambda0);
    report.q_mirror = q_mirror(geom, report.penetration_depth, report.r_s);

    const auto& ref = report.modes[report.reference_mode];
    if(options.alpha_db_per_mm)
    {
        report.q_propagation = q_propagation(ref.peak.f0, geom.v_g, *options.alpha_db_per_mm);
        const double qs[] = {*report.q_propagation, report.q_mirror};
        report.q_budget = combine_q(qs);
    }
    report.finesse = finesse(ref.q_loaded, geom.lambda0, geom.d, report.penetration_depth);
    return report;
}

std::string write_cavity_csv(const CavityReport& report)
{
    std::string out = "f0_hz,fwhm_hz,q_loaded,q_internal\n";
    for(const auto& m : report.modes)
    {
        out += format_double(m.peak.f0) + "," + format_double(m.peak.fwhm) + "," + format_double(m.q_loaded) + ",";
        if(m.q_internal)
            out += format_double(*m.q_internal);
        out += '\n';
    }
    return out;
}

KeyValueBlock cavity_summary(const CavityReport& report)
{
    KeyValueBlock kv;
    kv.set("source", std::string(ingest::to_string(report.source)));
    kv.set("modes", static_cast<long long>(report.modes.size()));
    kv.set("fsr_hz", report.fsr);
    kv.set("penetration_depth_m", report.penetration_depth);
    kv.set("r_s", report.r_s);
    kv.set("q_mirror", report.q_mirror);
    if(report.q_propagation)
        kv.set("q_propagation", *report.q_propagation);
    if(report.q_budget)
        kv.set("q_budget", *report.q_budget);
    const auto& ref = report.modes.at(report.reference_mode);
    kv.set("reference_f0_hz", ref.peak.f0);
    kv.set("reference_q_loaded", ref.q_loaded);
    if(ref.q_internal)
        kv.set("reference_q_internal", *ref.q_internal);
    kv.set("finesse", report.finesse);
    return kv;
}

ingest::NetworkSweep synthesize_reflection_comb(std::span<const double> freqs,
                                                double first_mode,
                                                double fsr,
                                                std::size_t n_modes,
                                                double q_loaded,
                                                double s11_min)
{
    if(freqs.size() < 2)
        throw ArgumentError("reflection comb needs at least two frequency points");
    if(!(fsr > 0) || !(q_loaded > 0) || n_modes == 0)
        throw ArgumentError("reflection comb needs fsr > 0, Q > 0 and at least one mode");
    if(!(s11_min >= 0 && s11_min <= 1))
        throw ArgumentError("|S11| minimum must lie in [0, 1]");

    ingest::NetworkSweep sweep;
    sweep.freqs.assign(freqs.begin(), freqs.end());
    sweep.label = "synthetic reflection comb";
    auto& s11 = sweep.s[PortPair::s11];
    for(double f : freqs)
    {
        double dip = 0;
        for(std::size_t m = 0; m < n_modes; ++m)
        {
            const double fm = first_mode + static_cast<double>(m) * fsr;
            dip += numerics::models::lorentzian_shape(f, fm, fm / q_loaded);
        }
        s11.emplace_back(1.0 - (1.0 - s11_min) * dip, 0.0);
    }
    sweep.validate();
    return sweep;
}

} // namespace sawkit::specanalysis
