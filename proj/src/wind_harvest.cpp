#include "res5g/wind_harvest.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "res5g/error.hpp"

namespace res5g {

namespace {

constexpr double kCurveSpacing = 0.5;  // [m/s]
constexpr double kSpeedTolerance = 1e-9;

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorKind::ValidationError, "wind_turbine." + what);
}

double interpolate(const std::vector<CurvePoint>& curve, double speed) {
  auto upper = std::upper_bound(curve.begin(), curve.end(), speed,
                                [](double v, const CurvePoint& p) { return v < p.speed; });
  if (upper == curve.begin()) return curve.front().power;
  if (upper == curve.end()) return curve.back().power;
  const auto lower = std::prev(upper);
  const double t = (speed - lower->speed) / (upper->speed - lower->speed);
  return lower->power + t * (upper->power - lower->power);
}

}  // namespace

void validate(const WindTurbineConfig& cfg) {
  require(cfg.rated_power > 0.0, "rated_power must be > 0");
  require(cfg.cut_in > 0.0 && cfg.cut_in < cfg.rated_speed && cfg.rated_speed <= cfg.cut_out,
          "speeds must satisfy 0 < cut_in < rated_speed <= cut_out");
  require(cfg.count_serial >= 1 && cfg.count_parallel >= 1, "counts must be >= 1");
  require(cfg.stc_air_density > 0.0, "stc_air_density must be > 0");
  if (cfg.power_curve.empty()) return;

  const auto& c = cfg.power_curve;
  require(c.size() >= 2, "power_curve needs at least two anchors");
  require(std::abs(c.front().speed - cfg.cut_in) <= kSpeedTolerance,
          "power_curve must start at cut_in");
  require(std::abs(c.back().speed - cfg.rated_speed) <= kSpeedTolerance,
          "power_curve must end at rated_speed");
  require(c.back().power == cfg.rated_power, "power_curve must reach rated_power at rated_speed");
  for (std::size_t i = 0; i < c.size(); ++i) {
    require(c[i].power >= 0.0 && c[i].power <= cfg.rated_power,
            "power_curve values must lie in [0, rated_power]");
    if (i == 0) continue;
    require(c[i].speed > c[i - 1].speed, "power_curve speeds must increase strictly");
    require(c[i].power >= c[i - 1].power, "power_curve must be non-decreasing");
  }
}

std::vector<CurvePoint> default_power_curve(const WindTurbineConfig& cfg) {
  std::vector<CurvePoint> curve;
  const double span = cfg.rated_speed - cfg.cut_in;
  for (int i = 0;; ++i) {
    const double v = cfg.cut_in + kCurveSpacing * i;
    if (v >= cfg.rated_speed - kSpeedTolerance) break;
    const double x = (v - cfg.cut_in) / span;
    curve.push_back({v, cfg.rated_power * x * x * x});
  }
  curve.push_back({cfg.rated_speed, cfg.rated_power});
  return curve;
}

double power_curve_eval(const WindTurbineConfig& cfg, double speed) {
  if (speed < cfg.cut_in || speed > cfg.cut_out) return 0.0;
  if (speed >= cfg.rated_speed) return cfg.rated_power;
  if (cfg.power_curve.empty()) return interpolate(default_power_curve(cfg), speed);
  return interpolate(cfg.power_curve, speed);
}

double wt_power_from(double hub_speed, double air_density, const WindTurbineConfig& cfg) {
  const double p = turbine_count(cfg) * power_curve_eval(cfg, hub_speed) * air_density / cfg.stc_air_density;
  return std::max(p, 0.0);
}

double wt_power(const WeatherSample& sample, const SiteGeometry& geom, const PhysicalConstants& consts,
                const WindTurbineConfig& cfg, double hub_height) {
  const double speed = wind_speed_at(sample, geom, hub_height);
  if (power_curve_eval(cfg, speed) == 0.0) return 0.0;
  return wt_power_from(speed, air_density_at(sample, geom, consts, hub_height), cfg);
}

}  // namespace res5g
