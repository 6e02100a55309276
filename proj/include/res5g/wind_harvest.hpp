#pragma once

#include <vector>

#include "res5g/atmosphere.hpp"

namespace res5g {

struct CurvePoint {
  double speed = 0.0;  // [m/s]
  double power = 0.0;  // [W]
};

/// Wind-turbine bank attached to one cell. Defaults describe a 1 kW,
/// three-blade, 48 V turbine.
struct WindTurbineConfig {
  double rated_power = 1000.0;   // [W]
  double rated_speed = 10.0;     // [m/s]
  double cut_in = 3.0;           // [m/s]
  double cut_out = 16.2;         // [m/s]
  int count_serial = 1;
  int count_parallel = 1;
  double stc_air_density = 1.225;  // [kg/m^3]
  double rotor_radius = 1.09;      // [m], reference only
  int blade_count = 3;             // reference only
  double nominal_voltage = 48.0;   // [V], reference only
  /// Anchors from cut_in to rated_speed; empty selects the cubic default.
  std::vector<CurvePoint> power_curve;
};

void validate(const WindTurbineConfig& cfg);

[[nodiscard]] inline int turbine_count(const WindTurbineConfig& cfg) {
  return cfg.count_serial * cfg.count_parallel;
}

/// Cubic ramp P_R ((v - v_in)/(v_r - v_in))^3 sampled every 0.5 m/s.
std::vector<CurvePoint> default_power_curve(const WindTurbineConfig& cfg);

/// Single-turbine output at standard air density. Zero outside
/// [cut_in, cut_out], rated power on [rated_speed, cut_out].
double power_curve_eval(const WindTurbineConfig& cfg, double speed);

/// Bank output [W] for a known hub wind speed and air density.
double wt_power_from(double hub_speed, double air_density, const WindTurbineConfig& cfg);

/// Bank output [W] with the turbine hub at ground-relative `hub_height`.
double wt_power(const WeatherSample& sample, const SiteGeometry& geom, const PhysicalConstants& consts,
                const WindTurbineConfig& cfg, double hub_height);

}  // namespace res5g
