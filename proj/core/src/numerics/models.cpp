#include "sawkit/numerics/models.hpp"

#include <cmath>
#include <numbers>

namespace sawkit::numerics::models
{

namespace
{

// Value and partials of amplitude * h^2 / (u^2 + h^2) with u = x - f0,
// h = fwhm/2. Writes d/d(amplitude), d/d(f0), d/d(fwhm).
double lorentz_term(double x, double amplitude, double f0, double fwhm, double* grad)
{
    const double h = 0.5 * fwhm;
    const double u = x - f0;
    const double denom = u * u + h * h;
    const double shape = h * h / denom;
    if(grad)
    {
        grad[0] = shape;
        grad[1] = amplitude * 2 * u * h * h / (denom * denom);
        grad[2] = amplitude * h * u * u / (denom * denom);
    }
    return amplitude * shape;
}

} // namespace

Model line()
{
    Model m;
    m.arity = 2;
    m.name = "line";
    m.value = [](double x, std::span<const double> p) { return p[0] + p[1] * x; };
    m.gradient = [](double x, std::span<const double>, std::span<double> out) {
        out[0] = 1;
        out[1] = x;
    };
    return m;
}

double lorentzian_shape(double x, double f0, double fwhm)
{
    return lorentz_term(x, 1.0, f0, fwhm, nullptr);
}

Model lorentzian()
{
    Model m;
    m.arity = 4;
    m.name = "lorentzian";
    m.value = [](double x, std::span<const double> p) { return p[0] + lorentz_term(x, p[1], p[2], p[3], nullptr); };
    m.gradient = [](double x, std::span<const double> p, std::span<double> out) {
        out[0] = 1;
        lorentz_term(x, p[1], p[2], p[3], &out[1]);
    };
    return m;
}

Model double_lorentzian()
{
    Model m;
    m.arity = 7;
    m.name = "double_lorentzian";
    m.value = [](double x, std::span<const double> p) {
        return p[0] + lorentz_term(x, p[1], p[2], p[3], nullptr) + lorentz_term(x, p[4], p[5], p[6], nullptr);
    };
    m.gradient = [](double x, std::span<const double> p, std::span<double> out) {
        out[0] = 1;
        lorentz_term(x, p[1], p[2], p[3], &out[1]);
        lorentz_term(x, p[4], p[5], p[6], &out[4]);
    };
    return m;
}

Model decaying_rabi()
{
    Model m;
    m.arity = 4;
    m.name = "decaying_rabi";
    m.value = [](double t, std::span<const double> p) {
        return p[0] - p[1] * std::exp(-p[3] * t) * std::cos(2 * std::numbers::pi * p[2] * t);
    };
    m.gradient = [](double t, std::span<const double> p, std::span<double> out) {
        const double env = std::exp(-p[3] * t);
        const double phase = 2 * std::numbers::pi * p[2] * t;
        const double c = std::cos(phase);
        const double s = std::sin(phase);
        out[0] = 1;
        out[1] = -env * c;
        out[2] = p[1] * env * s * 2 * std::numbers::pi * t;
        out[3] = p[1] * t * env * c;
    };
    return m;
}

Model sqrt_power()
{
    Model m;
    m.arity = 1;
    m.name = "sqrt_power";
    m.value = [](double x, std::span<const double> p) { return p[0] * std::sqrt(x); };
    m.gradient = [](double x, std::span<const double>, std::span<double> out) { out[0] = std::sqrt(x); };
    return m;
}

} // namespace sawkit::numerics::models
