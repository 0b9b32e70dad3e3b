#include "sawkit/numerics/units.hpp"

#include <cmath>
#include <numbers>

namespace sawkit::numerics
{

namespace
{
constexpr double kNeperPerMmPerDbPerMm = 1000.0 * std::numbers::ln10 / 10.0;
}

double db_convert(double value, DbMode mode)
{
    switch(mode)
    {
    case DbMode::db_to_power_ratio:
        return std::pow(10.0, value / 10.0);
    case DbMode::db_to_amplitude_ratio:
        return std::pow(10.0, value / 20.0);
    case DbMode::db_per_mm_to_per_m_power:
        return value * kNeperPerMmPerDbPerMm;
    }
    return value;
}

double power_ratio_to_db(double ratio)
{
    return 10.0 * std::log10(ratio);
}

double amplitude_ratio_to_db(double ratio)
{
    return 20.0 * std::log10(ratio);
}

double per_m_power_to_db_per_mm(double alpha_per_m)
{
    return alpha_per_m / kNeperPerMmPerDbPerMm;
}

double dbm_to_watts(double dbm)
{
    return 1e-3 * std::pow(10.0, dbm / 10.0);
}

double watts_to_dbm(double watts)
{
    return 10.0 * std::log10(watts / 1e-3);
}

} // namespace sawkit::numerics
