#pragma once

// Altitude-corrected atmospheric quantities derived from weather-station
// samples. Altitudes named `h` are ground-relative; the terrain altitude
// lifts them to absolute height before comparing with the station.

namespace res5g {

struct WeatherSample {
  long step = 0;                     // simulation step index [h]
  double station_temperature = 0.0;  // [degC] at the station altitude
  double station_wind_speed = 0.0;   // [m/s] at the station altitude
  double irradiance = 0.0;           // [W/m^2] global horizontal
  double station_pressure = 101325.0;  // [Pa] at the reference level
};

struct SiteGeometry {
  double terrain_altitude = 54.44;  // [m] absolute
  double station_altitude = 90.0;   // [m] absolute
  double reference_altitude = 0.0;  // [m] absolute, sea level
  double surface_roughness = 3.0;   // [m]
};

struct PhysicalConstants {
  double dry_air_gas_constant = 287.058;      // [J/(kg K)]
  double vapor_gas_constant = 461.495;        // [J/(kg K)]
  double universal_gas_constant = 8.31432;    // [N m/(mol K)]
  double air_molar_mass = 0.0289644;          // [kg/mol]
  double sea_level_gravity = 9.80665;         // [m/s^2]
  double earth_radius = 6371009.0;            // [m]
};

/// Throws InvalidGeometry unless station_altitude > surface_roughness > 0.
void validate(const SiteGeometry& geom);

/// Throws ValidationError naming the first non-positive constant.
void validate(const PhysicalConstants& consts);

/// Throws UnitRange on a sample violating its physical ranges.
void validate(const WeatherSample& sample);

/// Log-law extrapolation of the station wind speed to ground-relative height `h`.
/// Throws InvalidGeometry when h < 0 or when either logarithm argument is <= 1.
double wind_speed_at(const WeatherSample& sample, const SiteGeometry& geom, double h);

/// Lapse-rate corrected temperature [degC] (-6.5 K per km).
double temperature_at(const WeatherSample& sample, const SiteGeometry& geom, double h);

/// Gravitational acceleration at height `h` above the reference surface.
double gravity_at(const PhysicalConstants& consts, double h);

/// Barometric pressure [Pa]. The exponent uses the Kelvin temperature at `h`.
double pressure_at(const WeatherSample& sample, const SiteGeometry& geom,
                   const PhysicalConstants& consts, double h);

/// Magnus saturation vapour pressure, returned in Pa.
double vapor_pressure(double temperature);

/// Two-component ideal-gas density of a dry-air/vapour mixture.
/// Throws NegativeDryPressure when the vapour pressure exceeds `pressure`.
double moist_air_density(double temperature, double pressure, double vapor,
                         const PhysicalConstants& consts);

/// Air density [kg/m^3] at `h`, assuming saturated air.
double air_density_at(const WeatherSample& sample, const SiteGeometry& geom,
                      const PhysicalConstants& consts, double h);

}  // namespace res5g
