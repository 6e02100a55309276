#pragma once

#include <cmath>

namespace res5g::units {

inline constexpr double kZeroCelsiusInKelvin = 273.15;

inline double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

// Zero watts has no dBm representation; callers treat idle cells separately.
inline double watts_to_dbm(double watts) { return 10.0 * std::log10(watts) + 30.0; }

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double ratio) { return 10.0 * std::log10(ratio); }

inline double celsius_to_kelvin(double celsius) { return celsius + kZeroCelsiusInKelvin; }

}  // namespace res5g::units
