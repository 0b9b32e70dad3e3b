#include "sawkit/specanalysis/lorentzian.hpp"

#include "sawkit/error.hpp"
#include "sawkit/numerics/models.hpp"
#include "sawkit/numerics/stats.hpp"
#include "sawkit/specanalysis/peaks.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace sawkit::specanalysis
{

using numerics::FitError;
using numerics::FitResult;
using numerics::Interval;
using numerics::LeastSquaresOptions;
using numerics::Series;

double LorentzianPeak::value(double f) const
{
    return offset + amplitude * numerics::models::lorentzian_shape(f, f0, fwhm);
}

namespace
{

// Full width where |y - offset| falls to half of |amplitude| around `idx`,
// linearly interpolated; falls back to one side doubled, then to half the window.
double half_prominence_width(const Series& s, std::size_t idx, double offset, double amplitude)
{
    const double half = 0.5 * amplitude;
    auto level = [&](std::size_t i) { return (s.y[i] - offset) / half; };  // > 1 inside the half-width

    std::optional<double> left, right;
    for(std::size_t i = idx; i-- > 0;)
    {
        if(level(i) < 1)
        {
            const double t = (1 - level(i)) / (level(i + 1) - level(i));
            left = s.x[i] + t * (s.x[i + 1] - s.x[i]);
            break;
        }
    }
    for(std::size_t i = idx + 1; i < s.size(); ++i)
    {
        if(level(i) < 1)
        {
            const double t = (1 - level(i)) / (level(i - 1) - level(i));
            right = s.x[i] - t * (s.x[i] - s.x[i - 1]);
            break;
        }
    }

    const double step = (s.x.back() - s.x.front()) / static_cast<double>(s.size() - 1);
    double width = 0;
    if(left && right) width = *right - *left;
    else if(left) width = 2 * (s.x[idx] - *left);
    else if(right) width = 2 * (*right - s.x[idx]);
    else width = 0.5 * (s.x.back() - s.x.front());
    return std::max(width, step);
}

Series windowed(const Series& trace, std::pair<double, double> window, std::size_t min_samples)
{
    trace.validate();
    if(!(window.second > window.first))
        throw ArgumentError("fit window must have hi > lo");
    Series s = trace.slice(window.first, window.second);
    if(s.size() < min_samples)
        throw ArgumentError("fit window holds " + std::to_string(s.size()) + " samples; need at least "
                            + std::to_string(min_samples));
    return s;
}

struct Extreme
{
    std::size_t index;
    double offset;
    double amplitude;
};

Extreme find_extreme(const Series& s)
{
    const double med = numerics::median(s.y);
    std::size_t best = 0;
    for(std::size_t i = 1; i < s.size(); ++i)
        if(std::abs(s.y[i] - med) > std::abs(s.y[best] - med))
            best = i;
    return {best, med, s.y[best] - med};
}

void reject_flat(const Series& s)
{
    const auto [lo, hi] = std::minmax_element(s.y.begin(), s.y.end());
    const double scale = std::max(1.0, std::max(std::abs(*lo), std::abs(*hi)));
    if(!(*hi - *lo > 1e-12 * scale))
        throw FitError("degenerate fit: trace is flat inside the window");
}

} // namespace

LorentzianFit fit_lorentzian(const Series& trace, std::pair<double, double> window, std::optional<LorentzianPeak> init)
{
    const Series s = windowed(trace, window, 8);
    reject_flat(s);

    LorentzianPeak start;
    if(init)
    {
        start = *init;
    }
    else
    {
        const auto ext = find_extreme(s);
        start.f0 = s.x[ext.index];
        start.offset = ext.offset;
        start.amplitude = ext.amplitude;
        start.fwhm = half_prominence_width(s, ext.index, ext.offset, ext.amplitude);
    }

    const double span = s.x.back() - s.x.front();
    const double step = span / static_cast<double>(s.size() - 1);
    LeastSquaresOptions opt;
    opt.bounds = {Interval{}, Interval{}, Interval{s.x.front(), s.x.back()}, Interval{1e-3 * step, 10 * span}};

    const std::array<double, 4> p0{start.offset, start.amplitude, start.f0, start.fwhm};
    FitResult fit = numerics::least_squares(numerics::models::lorentzian(), s, p0, opt);

    if(fit.singular)
        throw FitError("degenerate fit: " + fit.message, fit);
    if(!fit.converged)
        throw FitError("Lorentzian fit did not converge: " + fit.message, fit);

    LorentzianFit out;
    out.peak = {fit.params[2], fit.params[3], fit.params[1], fit.params[0]};
    if(out.peak.f0 <= s.x.front() || out.peak.f0 >= s.x.back())
        throw FitError("fitted centre sits on the window edge", fit);
    out.fit = std::move(fit);
    return out;
}

DoubleLorentzianFit fit_double_lorentzian(const Series& trace, std::pair<double, double> window)
{
    const Series s = windowed(trace, window, 16);
    reject_flat(s);

    const auto ext = find_extreme(s);
    const double sign = ext.amplitude >= 0 ? 1.0 : -1.0;
    Series oriented = s;
    for(auto& v : oriented.y)
        v = sign * (v - ext.offset);

    auto found = find_peaks(oriented, 0.05 * std::abs(ext.amplitude), 0.0);
    std::sort(found.begin(), found.end(), [](const auto& a, const auto& b) { return a.prominence > b.prominence; });

    const double span = s.x.back() - s.x.front();
    const double step = span / static_cast<double>(s.size() - 1);

    std::array<LorentzianPeak, 2> start;
    if(found.empty())
        found.push_back({ext.index, s.x[ext.index], sign * ext.amplitude, std::abs(ext.amplitude)});
    for(std::size_t k = 0; k < std::min<std::size_t>(2, found.size()); ++k)
    {
        const auto idx = found[k].index;
        start[k].f0 = s.x[idx];
        start[k].amplitude = s.y[idx] - ext.offset;
        start[k].fwhm = half_prominence_width(s, idx, ext.offset, start[k].amplitude);
    }
    if(found.size() >= 2)
    {
        const double sep = std::abs(start[1].f0 - start[0].f0);
        for(auto& p : start)
            p.fwhm = std::min(p.fwhm, sep);
    }
    else
    {
        // Seed a weak second component beside the only visible peak.
        start[1] = start[0];
        start[1].amplitude = 0.1 * start[0].amplitude;
        start[1].f0 = std::clamp(start[0].f0 + 2 * start[0].fwhm, s.x.front(), s.x.back());
        if(start[1].f0 == start[0].f0)
            start[1].f0 = std::clamp(start[0].f0 - 2 * start[0].fwhm, s.x.front(), s.x.back());
    }

    LeastSquaresOptions opt;
    const Interval centre{s.x.front(), s.x.back()};
    const Interval width{1e-3 * step, 10 * span};
    opt.bounds = {Interval{}, Interval{}, centre, width, Interval{}, centre, width};

    const std::array<double, 7> p0{ext.offset,          start[0].amplitude, start[0].f0, start[0].fwhm,
                                   start[1].amplitude, start[1].f0,        start[1].fwhm};
    FitResult fit = numerics::least_squares(numerics::models::double_lorentzian(), s, p0, opt);

    const auto& p = fit.params;
    LorentzianPeak a{p[2], p[3], p[1], p[0]};
    LorentzianPeak b{p[5], p[6], p[4], p[0]};
    if(b.f0 < a.f0)
        std::swap(a, b);

    DoubleLorentzianFit out;
    out.lower = a;
    out.upper = b;
    const double big = std::max(std::abs(a.amplitude), std::abs(b.amplitude));
    const double small = std::min(std::abs(a.amplitude), std::abs(b.amplitude));
    out.degenerate = fit.singular || small < 1e-3 * big || std::abs(b.f0 - a.f0) < 0.5 * std::min(a.fwhm, b.fwhm);
    if(!out.degenerate && !fit.converged)
        throw FitError("double-Lorentzian fit did not converge: " + fit.message, fit);
    out.fit = std::move(fit);
    return out;
}

} // namespace sawkit::specanalysis
