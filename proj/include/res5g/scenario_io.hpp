#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "res5g/atmosphere.hpp"
#include "res5g/battery_store.hpp"
#include "res5g/cell_power.hpp"
#include "res5g/pv_harvest.hpp"
#include "res5g/radio_access.hpp"
#include "res5g/wind_harvest.hpp"

namespace res5g {

inline constexpr int kSchemaVersion = 1;

enum class ResMode { None, Pv, Wt, PvWt };

std::string_view to_string(ResMode mode);
/// Accepts none | pv | wt | pv+wt.
std::optional<ResMode> parse_mode(std::string_view text);
[[nodiscard]] inline bool uses_pv(ResMode m) { return m == ResMode::Pv || m == ResMode::PvWt; }
[[nodiscard]] inline bool uses_wt(ResMode m) { return m == ResMode::Wt || m == ResMode::PvWt; }

struct Range {
  double low = 0.0;
  double high = 0.0;
};

/// Per-site heights [m] are drawn inside these bounds when a site omits them.
struct AltitudeBounds {
  Range building{27.0, 41.0};
  Range antenna{32.0, 46.0};
  Range pv{27.0, 41.0};
  Range turbine{35.0, 49.0};
};

struct Building {
  std::vector<Point> footprint;  // closed implicitly
  double height = 20.0;          // [m]
};

struct DemandSpec {
  enum class Kind { Constant, Uniform };
  Kind kind = Kind::Constant;
  double value = 5.0;  // [Mbit/s]
  double low = 5.0;
  double high = 5.0;
};

struct UserSpec {
  int count = 300;
  DemandSpec demand;
  double antenna_height = 1.5;  // [m]
  double tx_power_max = 23.0;   // [dBm]
  double antenna_gain = 0.0;    // [dBi]
};

struct SimulationWindow {
  long start_step = 0;
  long step_count = 96;
  double dt_hours = 1.0;
  long day_steps = 24;  // batteries restart from their initial charge each day
  std::vector<std::string> day_labels{"vernal_equinox", "summer_solstice", "autumn_equinox",
                                      "winter_solstice"};
};

struct ScenarioConfig {
  int schema_version = kSchemaVersion;
  std::string name = "scenario";
  std::uint64_t seed = 42;
  int runs = 10;
  std::vector<ResMode> modes{ResMode::None, ResMode::Pv, ResMode::Wt, ResMode::PvWt};
  SimulationWindow window;
  double area_width = 1000.0;   // [m]
  double area_height = 1000.0;  // [m]
  SiteGeometry geometry;
  PhysicalConstants constants;
  AltitudeBounds altitude_bounds;
  std::vector<CellRadioConfig> bands{band_800(), band_2100(), band_3500()};
  CellEnergyConfig cell;
  std::vector<BaseStationSite> sites;  // each holds a copy of `bands`
  std::vector<Building> buildings;
  UserSpec users;
  std::optional<PvArrayConfig> pv = PvArrayConfig{};
  std::optional<WindTurbineConfig> wind_turbine = WindTurbineConfig{};
  BatteryConfig battery;
  McsTable mcs_table = default_mcs_table();
};

[[nodiscard]] inline long day_count(const SimulationWindow& w) {
  return (w.step_count + w.day_steps - 1) / w.day_steps;
}

/// Field-precise ValidationError on the first broken invariant.
void validate(const ScenarioConfig& cfg);

ScenarioConfig parse_scenario(std::string_view text, std::string_view source = "<memory>");
ScenarioConfig load_scenario(const std::filesystem::path& path);

/// Normalised document with every default spelled out.
std::string serialize_scenario(const ScenarioConfig& cfg);

struct WeatherTrace {
  std::vector<WeatherSample> samples;  // one per window step, in order
};

/// Column header of the weather table, in order.
inline constexpr std::string_view kWeatherHeader =
    "step,temperature_C,wind_mps,irradiance_Wm2,pressure_Pa";

/// Rows outside the window are ignored; every window step must be present.
WeatherTrace parse_weather(std::string_view text, const SimulationWindow& window,
                           std::string_view source = "<memory>");
WeatherTrace load_weather(const std::filesystem::path& path, const SimulationWindow& window);
WeatherTrace load_weather(const std::vector<std::filesystem::path>& paths, const SimulationWindow& window);
std::string format_weather(const WeatherTrace& trace);

bool inside_footprint(const Point& p, const Building& building);

/// Uniform placement outside every footprint, deterministic per seed.
/// Throws PlacementExhausted when rejection sampling keeps failing.
std::vector<UserTerminal> generate_users(const ScenarioConfig& cfg, std::uint64_t seed);

/// Deterministic per-run seed derived from the scenario seed.
std::uint64_t run_seed(std::uint64_t seed, int run);

std::string read_text_file(const std::filesystem::path& path);

}  // namespace res5g
