#include "res5g/atmosphere.hpp"

#include <cmath>
#include <string>

#include "res5g/error.hpp"
#include "res5g/units.hpp"

namespace res5g {

namespace {

constexpr double kLapseRate = 0.0065;  // [K/m]

// Magnus coefficients, output in hPa.
constexpr double kMagnusBase = 6.1078;
constexpr double kMagnusA = 7.5;
constexpr double kMagnusB = 237.3;
constexpr double kHectopascal = 100.0;

}  // namespace

void validate(const SiteGeometry& geom) {
  if (!(geom.surface_roughness > 0.0)) {
    throw Error(ErrorKind::InvalidGeometry, "surface_roughness must be > 0");
  }
  if (!(geom.station_altitude > geom.surface_roughness)) {
    throw Error(ErrorKind::InvalidGeometry, "station_altitude must exceed surface_roughness");
  }
}

void validate(const PhysicalConstants& consts) {
  auto require = [](double v, const char* name) {
    if (!(v > 0.0)) throw Error(ErrorKind::ValidationError, std::string(name) + " must be > 0");
  };
  require(consts.dry_air_gas_constant, "dry_air_gas_constant");
  require(consts.vapor_gas_constant, "vapor_gas_constant");
  require(consts.universal_gas_constant, "universal_gas_constant");
  require(consts.air_molar_mass, "air_molar_mass");
  require(consts.sea_level_gravity, "sea_level_gravity");
  require(consts.earth_radius, "earth_radius");
}

void validate(const WeatherSample& sample) {
  const std::string at = " at step " + std::to_string(sample.step);
  if (!(sample.irradiance >= 0.0)) throw Error(ErrorKind::UnitRange, "irradiance must be >= 0" + at);
  if (!(sample.station_wind_speed >= 0.0)) {
    throw Error(ErrorKind::UnitRange, "wind speed must be >= 0" + at);
  }
  if (!(sample.station_pressure > 0.0)) throw Error(ErrorKind::UnitRange, "pressure must be > 0" + at);
  if (!(sample.station_temperature > -units::kZeroCelsiusInKelvin)) {
    throw Error(ErrorKind::UnitRange, "temperature must be above absolute zero" + at);
  }
}

double wind_speed_at(const WeatherSample& sample, const SiteGeometry& geom, double h) {
  if (h < 0.0) throw Error(ErrorKind::InvalidGeometry, "height must be >= 0");
  const double target = (h + geom.terrain_altitude) / geom.surface_roughness;
  const double station = geom.station_altitude / geom.surface_roughness;
  if (!(target > 1.0) || !(station > 1.0)) {
    throw Error(ErrorKind::InvalidGeometry, "log-law arguments must exceed the roughness length");
  }
  if (sample.station_wind_speed == 0.0) return 0.0;
  return sample.station_wind_speed * std::log(target) / std::log(station);
}

double temperature_at(const WeatherSample& sample, const SiteGeometry& geom, double h) {
  return sample.station_temperature - kLapseRate * (h + geom.terrain_altitude - geom.station_altitude);
}

double gravity_at(const PhysicalConstants& consts, double h) {
  const double r = consts.earth_radius;
  return consts.sea_level_gravity * (r * r) / ((r + h) * (r + h));
}

double pressure_at(const WeatherSample& sample, const SiteGeometry& geom,
                   const PhysicalConstants& consts, double h) {
  const double kelvin = units::celsius_to_kelvin(temperature_at(sample, geom, h));
  if (!(kelvin > 0.0)) throw Error(ErrorKind::UnitRange, "temperature at altitude below absolute zero");
  const double rise = h + geom.terrain_altitude - geom.reference_altitude;
  const double exponent =
      -gravity_at(consts, h) * consts.air_molar_mass * rise / (consts.universal_gas_constant * kelvin);
  return sample.station_pressure * std::exp(exponent);
}

double vapor_pressure(double temperature) {
  return kMagnusBase * std::pow(10.0, kMagnusA * temperature / (temperature + kMagnusB)) * kHectopascal;
}

double moist_air_density(double temperature, double pressure, double vapor,
                         const PhysicalConstants& consts) {
  const double dry = pressure - vapor;
  if (dry < 0.0) {
    throw Error(ErrorKind::NegativeDryPressure,
                "vapour pressure " + std::to_string(vapor) + " Pa exceeds total " +
                    std::to_string(pressure) + " Pa");
  }
  const double kelvin = units::celsius_to_kelvin(temperature);
  return dry / (consts.dry_air_gas_constant * kelvin) + vapor / (consts.vapor_gas_constant * kelvin);
}

double air_density_at(const WeatherSample& sample, const SiteGeometry& geom,
                      const PhysicalConstants& consts, double h) {
  const double temperature = temperature_at(sample, geom, h);
  return moist_air_density(temperature, pressure_at(sample, geom, consts, h),
                           vapor_pressure(temperature), consts);
}

}  // namespace res5g
