#include <gtest/gtest.h>

#include <random>

#include "oracle.hpp"
#include "res5g/atmosphere.hpp"
#include "res5g/error.hpp"

using namespace res5g;

namespace {

WeatherSample sample(double t, double v, double p = 101325.0) { return {0, t, v, 0.0, p}; }

}  // namespace

TEST(Atmosphere, WindAtStationAltitudeIsUnchanged) {
  EXPECT_NEAR(wind_speed_at(sample(10, 5.0), SiteGeometry{}, 35.56), 5.0, 1e-12);
}

TEST(Atmosphere, CalmStaysCalm) { EXPECT_EQ(wind_speed_at(sample(10, 0.0), SiteGeometry{}, 20.0), 0.0); }

TEST(Atmosphere, WindAtHubHeight) {
  EXPECT_NEAR(wind_speed_at(sample(10, 5.0), SiteGeometry{}, 49.0), 5.204607, 1e-6);
}

TEST(Atmosphere, WindRejectsBadGeometry) {
  SiteGeometry g;
  g.terrain_altitude = 0.0;
  EXPECT_THROW(wind_speed_at(sample(10, 5.0), g, 2.0), Error);
  EXPECT_THROW(wind_speed_at(sample(10, 5.0), SiteGeometry{}, -1.0), Error);
  g = SiteGeometry{};
  g.station_altitude = 2.0;
  EXPECT_THROW(validate(g), Error);
}

TEST(Atmosphere, LapseRate) {
  EXPECT_NEAR(temperature_at(sample(10, 0), SiteGeometry{}, 35.56), 10.0, 1e-12);
  EXPECT_NEAR(temperature_at(sample(10, 0), SiteGeometry{}, 49.0), 9.91264, 1e-9);
  EXPECT_NEAR(temperature_at(sample(-5, 0), SiteGeometry{}, 0.0), -4.76886, 1e-9);
}

TEST(Atmosphere, PressureAtReferenceLevel) {
  SiteGeometry g;
  g.terrain_altitude = 0.0;
  EXPECT_DOUBLE_EQ(pressure_at(sample(15, 0), g, PhysicalConstants{}, 0.0), 101325.0);
}

TEST(Atmosphere, PressureAtTerrain) {
  // Station temperature chosen so the lapse-corrected value at h = 0 is 15 degC.
  const double t_station = 15.0 - 0.0065 * (90.0 - 54.44);
  EXPECT_NEAR(pressure_at(sample(t_station, 0), SiteGeometry{}, PhysicalConstants{}, 0.0), 100673.0, 1.0);
}

TEST(Atmosphere, GravityQuarterAtOneEarthRadius) {
  const PhysicalConstants k;
  EXPECT_DOUBLE_EQ(gravity_at(k, 0.0), k.sea_level_gravity);
  EXPECT_NEAR(gravity_at(k, k.earth_radius), k.sea_level_gravity / 4.0, 1e-15);
}

TEST(Atmosphere, VapourPressure) {
  EXPECT_NEAR(vapor_pressure(0.0), 610.78, 1e-10);
  EXPECT_NEAR(vapor_pressure(15.0), 1705.228, 1e-3);
  EXPECT_NEAR(vapor_pressure(25.0), 3167.489, 1e-3);
}

TEST(Atmosphere, DensityValues) {
  const PhysicalConstants k;
  EXPECT_NEAR(moist_air_density(15.0, 101325.0, 0.0, k), 1.2250, 1e-4);
  EXPECT_NEAR(moist_air_density(15.0, 101325.0, vapor_pressure(15.0), k), 1.21719, 1e-5);
  EXPECT_LT(moist_air_density(35.0, 101325.0, vapor_pressure(35.0), k),
            moist_air_density(15.0, 101325.0, vapor_pressure(15.0), k));
}

TEST(Atmosphere, VapourAboveTotalPressureIsRejected) {
  try {
    moist_air_density(15.0, 1000.0, 1705.0, PhysicalConstants{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NegativeDryPressure);
  }
}

TEST(Atmosphere, SampleValidation) {
  EXPECT_THROW(validate(WeatherSample{0, 10, 1, -5, 101325}), Error);
  EXPECT_THROW(validate(WeatherSample{0, 10, -1, 5, 101325}), Error);
  EXPECT_THROW(validate(WeatherSample{0, 10, 1, 5, 0}), Error);
  EXPECT_THROW(validate(WeatherSample{0, -274, 1, 5, 101325}), Error);
  EXPECT_NO_THROW(validate(WeatherSample{0, 10, 1, 5, 101325}));
}

TEST(AtmosphereProperty, Monotonicity) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> t(-30, 40), v(0, 25), h(0, 200);
  const SiteGeometry g;
  const PhysicalConstants k;
  for (int i = 0; i < 500; ++i) {
    const WeatherSample s = sample(t(rng), v(rng));
    const double h1 = h(rng);
    const double h2 = h1 + 1.0 + h(rng);
    EXPECT_NEAR(temperature_at(s, g, h1) - temperature_at(s, g, h2), 0.0065 * (h2 - h1), 1e-9);
    EXPECT_GT(pressure_at(s, g, k, h1), 0.0);
    EXPECT_GT(gravity_at(k, h1), gravity_at(k, h2));
    // Pressure falls with height at a fixed Kelvin temperature.
    WeatherSample s2 = s;
    s2.station_temperature += temperature_at(s, g, h1) - temperature_at(s, g, h2);
    EXPECT_GT(pressure_at(s, g, k, h1), pressure_at(s2, g, k, h2));
    const double scale = 1.0 + v(rng);
    WeatherSample scaled = s;
    scaled.station_wind_speed *= scale;
    EXPECT_NEAR(wind_speed_at(scaled, g, h1), scale * wind_speed_at(s, g, h1), 1e-9);
    EXPECT_GT(air_density_at(s, g, k, h1), 0.0);
  }
}

TEST(AtmosphereOracle, RandomDraws) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> t(-25, 38), v(0, 25), h(0, 60), p(95000, 104000);
  const SiteGeometry g;
  const PhysicalConstants k;
  for (int i = 0; i < 200; ++i) {
    const WeatherSample s = sample(t(rng), v(rng), p(rng));
    const double hh = h(rng);
    const double ta = oracle::temperature(s.station_temperature, g.station_altitude, g.terrain_altitude, hh);
    const double pa = oracle::pressure(s.station_pressure, ta, hh, g.terrain_altitude, g.reference_altitude,
                                       k.sea_level_gravity, k.earth_radius, k.air_molar_mass,
                                       k.universal_gas_constant);
    const double rho =
        oracle::density(ta, pa, oracle::vapor(ta), k.dry_air_gas_constant, k.vapor_gas_constant);
    EXPECT_NEAR(temperature_at(s, g, hh), ta, 1e-9 * std::abs(ta) + 1e-12);
    EXPECT_NEAR(pressure_at(s, g, k, hh), pa, 1e-9 * pa);
    EXPECT_NEAR(air_density_at(s, g, k, hh), rho, 1e-9 * rho);
    const double w = oracle::wind(s.station_wind_speed, g.station_altitude, g.terrain_altitude,
                                  g.surface_roughness, hh);
    EXPECT_NEAR(wind_speed_at(s, g, hh), w, 1e-9 * w + 1e-15);
  }
}
