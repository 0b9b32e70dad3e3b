#pragma once

namespace sawkit::numerics
{

enum class DbMode
{
    db_to_power_ratio,         // 10^(dB/10)
    db_to_amplitude_ratio,     // 10^(dB/20)
    db_per_mm_to_per_m_power,  // alpha[1/m] = alpha[dB/mm] * 1000 * ln(10) / 10
};

double db_convert(double value, DbMode mode);

// Inverses of the three db_convert modes.
double power_ratio_to_db(double ratio);
double amplitude_ratio_to_db(double ratio);
double per_m_power_to_db_per_mm(double alpha_per_m);

double dbm_to_watts(double dbm);
double watts_to_dbm(double watts);

// Reduced Planck constant, J*s (CODATA 2018 exact value).
inline constexpr double kHbar = 1.054571817e-34;

} // namespace sawkit::numerics
