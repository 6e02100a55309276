#include <gtest/gtest.h>

#include <random>

#include "oracle.hpp"
#include "res5g/error.hpp"
#include "res5g/wind_harvest.hpp"

using namespace res5g;

TEST(Wind, CurveLandmarks) {
  const WindTurbineConfig c;
  EXPECT_EQ(power_curve_eval(c, 2.0), 0.0);
  EXPECT_EQ(power_curve_eval(c, 3.0), 0.0);
  EXPECT_EQ(power_curve_eval(c, 10.0), 1000.0);
  EXPECT_EQ(power_curve_eval(c, 16.2), 1000.0);
  EXPECT_EQ(power_curve_eval(c, 17.0), 0.0);
}

TEST(Wind, CutInAndCutOutAreHard) {
  const WindTurbineConfig c;
  EXPECT_EQ(power_curve_eval(c, c.cut_in - 1e-9), 0.0);
  EXPECT_EQ(power_curve_eval(c, c.cut_out + 1e-9), 0.0);
  EXPECT_GT(power_curve_eval(c, c.cut_in + 1e-9), 0.0);
  EXPECT_EQ(power_curve_eval(c, c.cut_out - 1e-9), c.rated_power);
}

TEST(Wind, DensityScaling) {
  const WindTurbineConfig c;
  EXPECT_NEAR(wt_power_from(10.0, 1.225, c), 1000.0, 1e-12);
  EXPECT_NEAR(wt_power_from(10.0, 1.1, c), 897.959, 1e-3);
  EXPECT_EQ(wt_power(WeatherSample{0, 10, 0, 0, 101325}, SiteGeometry{}, PhysicalConstants{}, c, 40.0), 0.0);
}

TEST(Wind, DefaultCurveAnchors) {
  const WindTurbineConfig c;
  const auto curve = default_power_curve(c);
  ASSERT_EQ(curve.size(), 15U);
  EXPECT_EQ(curve.front().speed, 3.0);
  EXPECT_EQ(curve.back().speed, 10.0);
  EXPECT_NEAR(curve[7].power, 1000.0 * 0.125, 1e-12);  // 6.5 m/s is half way
}

TEST(Wind, CustomCurve) {
  WindTurbineConfig c;
  c.power_curve = {{3.0, 0.0}, {6.0, 300.0}, {10.0, 1000.0}};
  EXPECT_NO_THROW(validate(c));
  EXPECT_NEAR(power_curve_eval(c, 4.5), 150.0, 1e-12);
  EXPECT_NEAR(power_curve_eval(c, 8.0), 650.0, 1e-12);
  c.power_curve = {{3.0, 0.0}, {6.0, 300.0}, {8.0, 200.0}, {10.0, 1000.0}};
  EXPECT_THROW(validate(c), Error);
  c.power_curve = {{4.0, 0.0}, {10.0, 1000.0}};
  EXPECT_THROW(validate(c), Error);
  c.power_curve = {{3.0, 0.0}, {10.0, 900.0}};
  EXPECT_THROW(validate(c), Error);
}

TEST(Wind, ConfigValidation) {
  WindTurbineConfig c;
  c.cut_out = 9.0;
  EXPECT_THROW(validate(c), Error);
  c = WindTurbineConfig{};
  c.count_parallel = 0;
  EXPECT_THROW(validate(c), Error);
}

TEST(WindProperty, MonotoneContinuousLinear) {
  const WindTurbineConfig c;
  double prev = 0.0;
  for (double v = c.cut_in; v <= c.rated_speed; v += 0.01) {
    const double p = power_curve_eval(c, v);
    EXPECT_GE(p, prev);
    EXPECT_LT(p - prev, 15.0);
    prev = p;
  }
  std::mt19937_64 rng(19);
  std::uniform_real_distribution<double> v(0, 20), rho(1.0, 1.4);
  for (int i = 0; i < 300; ++i) {
    const double vi = v(rng);
    const double r = rho(rng);
    WindTurbineConfig three = c;
    three.count_parallel = 3;
    EXPECT_NEAR(wt_power_from(vi, r, three), 3.0 * wt_power_from(vi, r, c), 1e-9);
    EXPECT_NEAR(wt_power_from(vi, 2.0 * r, c), 2.0 * wt_power_from(vi, r, c), 1e-9);
  }
}

TEST(WindOracle, RandomDraws) {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(0, 1);
  for (int i = 0; i < 200; ++i) {
    WindTurbineConfig c;
    c.rated_power = 500.0 + 1500.0 * u(rng);
    c.cut_in = 2.0 + 2.0 * u(rng);
    c.rated_speed = 9.0 + 4.0 * u(rng);
    c.cut_out = c.rated_speed + 3.0 + 5.0 * u(rng);
    c.count_parallel = 1 + static_cast<int>(3 * u(rng));
    const double v = 22.0 * u(rng);
    const double rho = 1.0 + 0.4 * u(rng);
    const double expect = oracle::wt_power(v, rho, c.count_parallel, c.rated_power, c.cut_in, c.rated_speed,
                                           c.cut_out, c.stc_air_density);
    EXPECT_NEAR(wt_power_from(v, rho, c), expect, 1e-9 * expect + 1e-12) << v;
  }
}
