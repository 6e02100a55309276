#include "res5g/scenario_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include <boost/geometry.hpp>
#include <boost/geometry/geometries/point_xy.hpp>
#include <boost/geometry/geometries/polygon.hpp>
#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "res5g/error.hpp"

namespace res5g {

namespace bg = boost::geometry;
using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

namespace {

using BgPoint = bg::model::d2::point_xy<double>;
using BgPolygon = bg::model::polygon<BgPoint>;

constexpr int kPlacementAttempts = 10000;

[[noreturn]] void invalid(const std::string& what) { throw Error(ErrorKind::ValidationError, what); }

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// 53-bit uniform draw in [0, 1); fixed algorithm so traces match across
// standard libraries.
double unit_draw(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

BgPolygon to_polygon(const Building& b) {
  BgPolygon poly;
  for (const auto& p : b.footprint) bg::append(poly.outer(), BgPoint(p.x, p.y));
  bg::correct(poly);
  return poly;
}

// Tracks which keys of a JSON object were consumed so typos surface as
// validation errors instead of silently falling back to defaults.
class Section {
 public:
  Section(const json& obj, std::string path) : obj_(obj), path_(std::move(path)) {
    if (!obj_.is_object()) invalid(path_ + " must be an object");
  }

  template <class T>
  void get(const char* key, T& out) {
    seen_.insert(key);
    const auto it = obj_.find(key);
    if (it == obj_.end() || it->is_null()) return;
    try {
      out = it->get<T>();
    } catch (const json::exception&) {
      invalid(path_ + "." + key + ": wrong type");
    }
  }

  void range(const char* key, Range& out) {
    seen_.insert(key);
    const auto it = obj_.find(key);
    if (it == obj_.end() || it->is_null()) return;
    if (!it->is_array() || it->size() != 2 || !(*it)[0].is_number() || !(*it)[1].is_number()) {
      invalid(path_ + "." + key + ": expected [low, high]");
    }
    out = {(*it)[0].get<double>(), (*it)[1].get<double>()};
  }

  const json* child(const char* key) {
    seen_.insert(key);
    const auto it = obj_.find(key);
    return it == obj_.end() ? nullptr : &*it;
  }

  [[nodiscard]] std::string path(const char* key) const { return path_ + "." + key; }

  void finish() const {
    for (const auto& item : obj_.items()) {
      if (!seen_.count(item.key())) invalid(path_ + "." + item.key() + ": unknown field");
    }
  }

 private:
  const json& obj_;
  std::string path_;
  std::set<std::string> seen_;
};

Point read_point(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    invalid(path + ": expected [x, y]");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

CellRadioConfig base_band(const std::string& name) {
  if (name == "800") return band_800();
  if (name == "2100") return band_2100();
  return band_3500();
}

CellRadioConfig read_band(const json& j, const std::string& path) {
  std::string name;
  if (j.is_object() && j.contains("band") && j["band"].is_string()) name = j["band"].get<std::string>();
  if (name.empty()) invalid(path + ".band: required string");
  CellRadioConfig c = base_band(name);
  Section s(j, path);
  s.get("band", c.band);
  s.get("frequency_mhz", c.frequency);
  s.get("channel_bandwidth_hz", c.channel_bandwidth);
  s.get("max_antenna_elements", c.max_antenna_elements);
  s.get("antenna_gain_dbi", c.antenna_gain);
  s.get("feeder_loss_db", c.feeder_loss);
  s.get("max_transmit_power_dbm", c.max_transmit_power);
  s.get("noise_figure_db", c.noise_figure);
  s.get("pilot_reuse", c.pilot_reuse);
  s.get("coherence_time_s", c.coherence_time);
  s.get("coherence_bandwidth_hz", c.coherence_bandwidth);
  s.get("duty_dl", c.duty_dl);
  s.get("duty_ul", c.duty_ul);
  s.get("spatial_duty", c.spatial_duty);
  s.get("used_subcarriers", c.used_subcarriers);
  s.get("total_subcarriers", c.total_subcarriers);
  s.get("sampling_factor", c.sampling_factor);
  s.get("interference_margin_db", c.interference_margin);
  s.get("doppler_margin_db", c.doppler_margin);
  s.get("fade_margin_db", c.fade_margin);
  s.get("shadow_margin_db", c.shadow_margin);
  s.get("implementation_loss_db", c.implementation_loss);
  s.get("soft_handover_gain_db", c.soft_handover_gain);
  std::string activation = c.activation == AntennaActivation::AllOrNothing ? "all" : "load";
  s.get("antenna_activation", activation);
  if (activation == "all") {
    c.activation = AntennaActivation::AllOrNothing;
  } else if (activation == "load") {
    c.activation = AntennaActivation::LoadProportional;
  } else {
    invalid(path + ".antenna_activation: expected \"all\" or \"load\"");
  }
  s.finish();
  return c;
}

void read_cell(const json& j, CellEnergyConfig& e) {
  Section s(j, "cell");
  s.get("fixed_power_w", e.fixed_power);
  s.get("oscillator_power_w", e.oscillator_power);
  s.get("circuit_power_w", e.circuit_power);
  s.get("coding_power_w_per_gbps", e.coding_power);
  s.get("decoding_power_w_per_gbps", e.decoding_power);
  s.get("backhaul_power_w_per_gbps", e.backhaul_power);
  s.get("auxiliary_power_w", e.auxiliary_power);
  s.get("compute_efficiency_flops_per_w", e.compute_efficiency);
  s.get("amplifier_efficiency", e.amplifier_efficiency);
  s.get("cooling_loss", e.cooling_loss);
  s.get("circuit_heat_coeff", e.circuit_heat_coeff);
  s.get("room_length_m", e.room_length);
  s.get("room_width_m", e.room_width);
  s.get("room_height_m", e.room_height);
  s.get("room_target_temperature_c", e.room_target_temperature);
  s.get("room_heat_coeff", e.room_heat_coeff);
  s.get("dc_loss", e.dc_loss);
  s.finish();
}

void read_pv(const json& j, PvArrayConfig& pv) {
  Section s(j, "pv");
  s.get("count_serial", pv.count_serial);
  s.get("count_parallel", pv.count_parallel);
  s.get("rated_power_w", pv.rated_power);
  s.get("derating", pv.derating);
  s.get("temp_coeff_per_c", pv.temp_coeff);
  s.get("stc_irradiance_wm2", pv.stc_irradiance);
  s.get("noct_irradiance_wm2", pv.noct_irradiance);
  s.get("stc_cell_temperature_c", pv.stc_cell_temperature);
  s.get("noct_cell_temperature_c", pv.noct_cell_temperature);
  s.get("noct_ambient_c", pv.noct_ambient);
  s.get("transmittance", pv.transmittance);
  s.get("absorptance", pv.absorptance);
  s.get("module_length_m", pv.module_length);
  s.get("module_width_m", pv.module_width);
  s.get("nominal_voltage_v", pv.nominal_voltage);
  s.get("mpp_voltage_v", pv.mpp_voltage);
  s.get("mpp_current_a", pv.mpp_current);
  s.finish();
}

void read_turbine(const json& j, WindTurbineConfig& wt) {
  Section s(j, "wind_turbine");
  s.get("rated_power_w", wt.rated_power);
  s.get("rated_speed_mps", wt.rated_speed);
  s.get("cut_in_mps", wt.cut_in);
  s.get("cut_out_mps", wt.cut_out);
  s.get("count_serial", wt.count_serial);
  s.get("count_parallel", wt.count_parallel);
  s.get("stc_air_density_kgm3", wt.stc_air_density);
  s.get("rotor_radius_m", wt.rotor_radius);
  s.get("blade_count", wt.blade_count);
  s.get("nominal_voltage_v", wt.nominal_voltage);
  if (const json* curve = s.child("power_curve"); curve && !curve->is_null()) {
    if (!curve->is_array()) invalid("wind_turbine.power_curve: expected [[speed, power], ...]");
    wt.power_curve.clear();
    for (std::size_t i = 0; i < curve->size(); ++i) {
      const Point p = read_point((*curve)[i], "wind_turbine.power_curve[" + std::to_string(i) + "]");
      wt.power_curve.push_back({p.x, p.y});
    }
  }
  s.finish();
}

void read_battery(const json& j, BatteryConfig& b) {
  Section s(j, "battery");
  s.get("unit_energy_wh", b.unit_energy);
  s.get("count_serial", b.count_serial);
  s.get("count_parallel", b.count_parallel);
  s.get("efficiency", b.efficiency);
  s.get("initial_soc", b.initial_soc);
  s.get("max_dod", b.max_dod);
  s.get("cycle_life", b.cycle_life);
  s.get("nominal_voltage_v", b.nominal_voltage);
  s.get("charge_voltage_v", b.charge_voltage);
  s.get("discharge_voltage_v", b.discharge_voltage);
  s.get("charge_current_a", b.charge_current);
  s.get("rapid_charge_current_a", b.rapid_charge_current);
  s.get("discharge_current_a", b.discharge_current);
  s.get("capacity_ah", b.capacity_ah);
  s.finish();
}

void read_users(const json& j, UserSpec& u) {
  Section s(j, "users");
  s.get("count", u.count);
  s.get("antenna_height_m", u.antenna_height);
  s.get("tx_power_max_dbm", u.tx_power_max);
  s.get("antenna_gain_dbi", u.antenna_gain);
  if (const json* d = s.child("demand_mbps"); d && !d->is_null()) {
    Section ds(*d, "users.demand_mbps");
    std::string kind = u.demand.kind == DemandSpec::Kind::Constant ? "constant" : "uniform";
    ds.get("distribution", kind);
    if (kind == "constant") {
      u.demand.kind = DemandSpec::Kind::Constant;
    } else if (kind == "uniform") {
      u.demand.kind = DemandSpec::Kind::Uniform;
    } else {
      invalid("users.demand_mbps.distribution: expected \"constant\" or \"uniform\"");
    }
    ds.get("value", u.demand.value);
    ds.get("low", u.demand.low);
    ds.get("high", u.demand.high);
    ds.finish();
  }
  s.finish();
}

double within(const Range& r, double u) { return r.low + u * (r.high - r.low); }

BaseStationSite read_site(const json& j, std::size_t index, const ScenarioConfig& cfg) {
  const std::string path = "sites[" + std::to_string(index) + "]";
  Section s(j, path);
  BaseStationSite site;
  site.name = "BS" + std::to_string(index + 1);
  s.get("name", site.name);
  s.get("x", site.position.x);
  s.get("y", site.position.y);

  // One draw per site keeps roof, antenna, panel and hub heights aligned.
  std::mt19937_64 rng(splitmix64(cfg.seed ^ splitmix64(index + 1)));
  const double u = unit_draw(rng);
  site.building_altitude = within(cfg.altitude_bounds.building, u);
  site.antenna_height = within(cfg.altitude_bounds.antenna, u);
  site.pv_altitude = within(cfg.altitude_bounds.pv, u);
  site.turbine_altitude = within(cfg.altitude_bounds.turbine, u);
  s.get("building_altitude_m", site.building_altitude);
  s.get("antenna_height_m", site.antenna_height);
  s.get("pv_altitude_m", site.pv_altitude);
  s.get("turbine_altitude_m", site.turbine_altitude);
  s.finish();
  site.cells = cfg.bands;
  return site;
}

ordered_json write_band(const CellRadioConfig& c) {
  return {{"band", c.band},
          {"frequency_mhz", c.frequency},
          {"channel_bandwidth_hz", c.channel_bandwidth},
          {"max_antenna_elements", c.max_antenna_elements},
          {"antenna_gain_dbi", c.antenna_gain},
          {"feeder_loss_db", c.feeder_loss},
          {"max_transmit_power_dbm", c.max_transmit_power},
          {"noise_figure_db", c.noise_figure},
          {"pilot_reuse", c.pilot_reuse},
          {"coherence_time_s", c.coherence_time},
          {"coherence_bandwidth_hz", c.coherence_bandwidth},
          {"duty_dl", c.duty_dl},
          {"duty_ul", c.duty_ul},
          {"spatial_duty", c.spatial_duty},
          {"used_subcarriers", c.used_subcarriers},
          {"total_subcarriers", c.total_subcarriers},
          {"sampling_factor", c.sampling_factor},
          {"interference_margin_db", c.interference_margin},
          {"doppler_margin_db", c.doppler_margin},
          {"fade_margin_db", c.fade_margin},
          {"shadow_margin_db", c.shadow_margin},
          {"implementation_loss_db", c.implementation_loss},
          {"soft_handover_gain_db", c.soft_handover_gain},
          {"antenna_activation", c.activation == AntennaActivation::AllOrNothing ? "all" : "load"}};
}

void check_altitude(const ScenarioConfig& cfg, double h, const std::string& field) {
  if (!(h >= 0.0)) invalid(field + " must be >= 0");
  if (!(h + cfg.geometry.terrain_altitude > cfg.geometry.surface_roughness)) {
    invalid(field + " plus terrain altitude must exceed the surface roughness");
  }
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

template <class T>
bool parse_number(std::string_view field, T& out) {
  field = trim(field);
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), out);
  return ec == std::errc() && ptr == field.data() + field.size();
}

std::vector<WeatherSample> parse_weather_rows(std::string_view text, std::string_view source) {
  const std::string src(source);
  std::vector<WeatherSample> rows;
  bool header_seen = false;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    const std::string_view line = trim(text.substr(pos, end - pos));
    pos = end + 1;
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    if (!header_seen) {
      if (line != kWeatherHeader) {
        throw Error(ErrorKind::ParseError, src + ":" + std::to_string(line_no) + ": expected header '" +
                                               std::string(kWeatherHeader) + "'");
      }
      header_seen = true;
      continue;
    }
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = line.find(',', start);
      fields.push_back(line.substr(start, comma == std::string_view::npos ? line.size() - start : comma - start));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    WeatherSample s;
    if (fields.size() != 5 || !parse_number(fields[0], s.step) ||
        !parse_number(fields[1], s.station_temperature) || !parse_number(fields[2], s.station_wind_speed) ||
        !parse_number(fields[3], s.irradiance) || !parse_number(fields[4], s.station_pressure)) {
      throw Error(ErrorKind::ParseError, src + ":" + std::to_string(line_no) + ": malformed row");
    }
    try {
      validate(s);
    } catch (const Error& e) {
      throw Error(ErrorKind::UnitRange, src + ":" + std::to_string(line_no) + ": " + e.what());
    }
    if (!rows.empty() && s.step <= rows.back().step) {
      throw Error(ErrorKind::NonMonotoneTimestamps,
                  src + ":" + std::to_string(line_no) + ": step " + std::to_string(s.step) +
                      " does not follow " + std::to_string(rows.back().step));
    }
    rows.push_back(s);
  }
  if (!header_seen) throw Error(ErrorKind::ParseError, src + ": missing header");
  return rows;
}

WeatherTrace select_window(const std::vector<WeatherSample>& rows, const SimulationWindow& window,
                           const std::string& source) {
  WeatherTrace trace;
  auto it = std::lower_bound(rows.begin(), rows.end(), window.start_step,
                             [](const WeatherSample& s, long step) { return s.step < step; });
  for (long step = window.start_step; step < window.start_step + window.step_count; ++step, ++it) {
    if (it == rows.end() || it->step != step) {
      throw Error(ErrorKind::MissingStep, source + ": no weather row for step " + std::to_string(step));
    }
    trace.samples.push_back(*it);
  }
  return trace;
}

}  // namespace

std::string_view to_string(ResMode mode) {
  switch (mode) {
    case ResMode::None: return "none";
    case ResMode::Pv: return "pv";
    case ResMode::Wt: return "wt";
    case ResMode::PvWt: return "pv+wt";
  }
  return "none";
}

std::optional<ResMode> parse_mode(std::string_view text) {
  for (ResMode m : {ResMode::None, ResMode::Pv, ResMode::Wt, ResMode::PvWt}) {
    if (text == to_string(m)) return m;
  }
  return std::nullopt;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void validate(const ScenarioConfig& cfg) {
  if (cfg.schema_version != kSchemaVersion) {
    invalid("schema_version: expected " + std::to_string(kSchemaVersion));
  }
  if (cfg.runs < 1) invalid("runs must be >= 1");
  const SimulationWindow& w = cfg.window;
  if (w.step_count < 1) invalid("simulation.step_count must be >= 1");
  if (w.start_step < 0) invalid("simulation.start_step must be >= 0");
  if (!(w.dt_hours > 0.0)) invalid("simulation.dt_hours must be > 0");
  if (w.day_steps < 1) invalid("simulation.day_steps must be >= 1");
  if (!w.day_labels.empty() && static_cast<long>(w.day_labels.size()) != day_count(w)) {
    invalid("simulation.day_labels must name every day (" + std::to_string(day_count(w)) + ")");
  }
  if (!(cfg.area_width > 0.0) || !(cfg.area_height > 0.0)) invalid("area dimensions must be > 0");

  try {
    validate(cfg.geometry);
  } catch (const Error& e) {
    invalid(std::string("site_geometry: ") + e.what());
  }
  validate(cfg.constants);

  for (const Range* r : {&cfg.altitude_bounds.building, &cfg.altitude_bounds.antenna, &cfg.altitude_bounds.pv,
                         &cfg.altitude_bounds.turbine}) {
    if (!(r->low <= r->high)) invalid("altitude_bounds: low must not exceed high");
  }

  if (cfg.bands.empty()) invalid("bands must list at least one band");
  std::set<double> freqs;
  for (const auto& band : cfg.bands) {
    validate(band);
    if (!freqs.insert(band.frequency).second) invalid("bands: frequencies must be distinct");
  }
  validate(cfg.cell);

  if (cfg.sites.empty()) invalid("sites must list at least one site");
  for (std::size_t i = 0; i < cfg.sites.size(); ++i) {
    const BaseStationSite& s = cfg.sites[i];
    const std::string p = "sites[" + std::to_string(i) + "]";
    if (s.position.x < 0.0 || s.position.x > cfg.area_width || s.position.y < 0.0 ||
        s.position.y > cfg.area_height) {
      invalid(p + ": position outside the area");
    }
    check_altitude(cfg, s.building_altitude, p + ".building_altitude_m");
    check_altitude(cfg, s.antenna_height, p + ".antenna_height_m");
    check_altitude(cfg, s.pv_altitude, p + ".pv_altitude_m");
    check_altitude(cfg, s.turbine_altitude, p + ".turbine_altitude_m");
    if (s.cells.size() != cfg.bands.size()) invalid(p + ": every site carries one cell per band");
  }

  for (std::size_t i = 0; i < cfg.buildings.size(); ++i) {
    if (cfg.buildings[i].footprint.size() < 3) {
      invalid("buildings[" + std::to_string(i) + "].footprint needs at least three vertices");
    }
  }

  if (cfg.users.count < 0) invalid("users.count must be >= 0");
  if (!(cfg.users.antenna_height > 0.0)) invalid("users.antenna_height_m must be > 0");
  const DemandSpec& d = cfg.users.demand;
  if (d.kind == DemandSpec::Kind::Constant && !(d.value > 0.0)) invalid("users.demand_mbps.value must be > 0");
  if (d.kind == DemandSpec::Kind::Uniform && !(d.low > 0.0 && d.low <= d.high)) {
    invalid("users.demand_mbps: need 0 < low <= high");
  }

  if (cfg.pv) validate(*cfg.pv);
  if (cfg.wind_turbine) validate(*cfg.wind_turbine);
  validate(cfg.battery);
  validate(cfg.mcs_table);

  if (cfg.modes.empty()) invalid("modes must list at least one mode");
  std::set<ResMode> seen;
  for (ResMode m : cfg.modes) {
    if (!seen.insert(m).second) invalid("modes: duplicate " + std::string(to_string(m)));
    if (uses_pv(m) && !cfg.pv) invalid("modes: " + std::string(to_string(m)) + " needs a pv section");
    if (uses_wt(m) && !cfg.wind_turbine) {
      invalid("modes: " + std::string(to_string(m)) + " needs a wind_turbine section");
    }
  }
}

ScenarioConfig parse_scenario(std::string_view text, std::string_view source) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::ParseError, std::string(source) + ": " + e.what());
  }

  ScenarioConfig cfg;
  Section root(doc, "scenario");
  root.get("schema_version", cfg.schema_version);
  if (cfg.schema_version != kSchemaVersion) {
    invalid("schema_version: expected " + std::to_string(kSchemaVersion));
  }
  root.get("name", cfg.name);
  root.get("seed", cfg.seed);
  root.get("runs", cfg.runs);

  if (const json* modes = root.child("modes"); modes && !modes->is_null()) {
    if (!modes->is_array()) invalid("modes: expected a list");
    cfg.modes.clear();
    for (const auto& m : *modes) {
      const auto mode = m.is_string() ? parse_mode(m.get<std::string>()) : std::nullopt;
      if (!mode) invalid("modes: expected none | pv | wt | pv+wt");
      cfg.modes.push_back(*mode);
    }
  }

  if (const json* sim = root.child("simulation"); sim && !sim->is_null()) {
    Section s(*sim, "simulation");
    s.get("start_step", cfg.window.start_step);
    s.get("step_count", cfg.window.step_count);
    s.get("dt_hours", cfg.window.dt_hours);
    s.get("day_steps", cfg.window.day_steps);
    s.get("day_labels", cfg.window.day_labels);
    s.finish();
  }
  if (const json* area = root.child("area"); area && !area->is_null()) {
    Section s(*area, "area");
    s.get("width_m", cfg.area_width);
    s.get("height_m", cfg.area_height);
    s.finish();
  }
  if (const json* g = root.child("site_geometry"); g && !g->is_null()) {
    Section s(*g, "site_geometry");
    s.get("terrain_altitude_m", cfg.geometry.terrain_altitude);
    s.get("station_altitude_m", cfg.geometry.station_altitude);
    s.get("reference_altitude_m", cfg.geometry.reference_altitude);
    s.get("surface_roughness_m", cfg.geometry.surface_roughness);
    s.finish();
  }
  if (const json* c = root.child("constants"); c && !c->is_null()) {
    Section s(*c, "constants");
    s.get("dry_air_gas_constant", cfg.constants.dry_air_gas_constant);
    s.get("vapor_gas_constant", cfg.constants.vapor_gas_constant);
    s.get("universal_gas_constant", cfg.constants.universal_gas_constant);
    s.get("air_molar_mass", cfg.constants.air_molar_mass);
    s.get("sea_level_gravity", cfg.constants.sea_level_gravity);
    s.get("earth_radius", cfg.constants.earth_radius);
    s.finish();
  }
  if (const json* a = root.child("altitude_bounds"); a && !a->is_null()) {
    Section s(*a, "altitude_bounds");
    s.range("building_m", cfg.altitude_bounds.building);
    s.range("antenna_m", cfg.altitude_bounds.antenna);
    s.range("pv_m", cfg.altitude_bounds.pv);
    s.range("wind_turbine_m", cfg.altitude_bounds.turbine);
    s.finish();
  }
  if (const json* bands = root.child("bands"); bands && !bands->is_null()) {
    if (!bands->is_array()) invalid("bands: expected a list");
    cfg.bands.clear();
    for (std::size_t i = 0; i < bands->size(); ++i) {
      cfg.bands.push_back(read_band((*bands)[i], "bands[" + std::to_string(i) + "]"));
    }
  }
  if (const json* c = root.child("cell"); c && !c->is_null()) read_cell(*c, cfg.cell);

  if (const json* pv = root.child("pv"); pv) {
    if (pv->is_null()) {
      cfg.pv.reset();
    } else {
      read_pv(*pv, *cfg.pv);
    }
  }
  if (const json* wt = root.child("wind_turbine"); wt) {
    if (wt->is_null()) {
      cfg.wind_turbine.reset();
    } else {
      read_turbine(*wt, *cfg.wind_turbine);
    }
  }
  if (const json* b = root.child("battery"); b && !b->is_null()) read_battery(*b, cfg.battery);
  if (const json* u = root.child("users"); u && !u->is_null()) read_users(*u, cfg.users);

  if (const json* mcs = root.child("mcs_table"); mcs && !mcs->is_null()) {
    if (!mcs->is_array()) invalid("mcs_table: expected [[efficiency, snr_db], ...]");
    cfg.mcs_table.clear();
    for (std::size_t i = 0; i < mcs->size(); ++i) {
      const Point row = read_point((*mcs)[i], "mcs_table[" + std::to_string(i) + "]");
      cfg.mcs_table.push_back({row.x, row.y});
    }
  }

  if (const json* buildings = root.child("buildings"); buildings && !buildings->is_null()) {
    if (!buildings->is_array()) invalid("buildings: expected a list");
    for (std::size_t i = 0; i < buildings->size(); ++i) {
      const std::string p = "buildings[" + std::to_string(i) + "]";
      Section s((*buildings)[i], p);
      Building b;
      s.get("height_m", b.height);
      const json* fp = s.child("footprint");
      if (!fp || !fp->is_array()) invalid(p + ".footprint: expected [[x, y], ...]");
      for (std::size_t k = 0; k < fp->size(); ++k) {
        b.footprint.push_back(read_point((*fp)[k], p + ".footprint[" + std::to_string(k) + "]"));
      }
      s.finish();
      cfg.buildings.push_back(std::move(b));
    }
  }

  // Sites last: their cells copy the bands and their heights use the bounds.
  if (const json* sites = root.child("sites"); sites && !sites->is_null()) {
    if (!sites->is_array()) invalid("sites: expected a list");
    for (std::size_t i = 0; i < sites->size(); ++i) cfg.sites.push_back(read_site((*sites)[i], i, cfg));
  }
  root.finish();

  if (cfg.wind_turbine && cfg.wind_turbine->power_curve.empty()) {
    cfg.wind_turbine->power_curve = default_power_curve(*cfg.wind_turbine);
  }
  validate(cfg);
  return cfg;
}

ScenarioConfig load_scenario(const std::filesystem::path& path) {
  return parse_scenario(read_text_file(path), path.string());
}

std::string serialize_scenario(const ScenarioConfig& cfg) {
  ordered_json doc;
  doc["schema_version"] = cfg.schema_version;
  doc["name"] = cfg.name;
  doc["seed"] = cfg.seed;
  doc["runs"] = cfg.runs;
  doc["modes"] = ordered_json::array();
  for (ResMode m : cfg.modes) doc["modes"].push_back(std::string(to_string(m)));
  doc["simulation"] = {{"start_step", cfg.window.start_step},
                       {"step_count", cfg.window.step_count},
                       {"dt_hours", cfg.window.dt_hours},
                       {"day_steps", cfg.window.day_steps},
                       {"day_labels", cfg.window.day_labels}};
  doc["area"] = {{"width_m", cfg.area_width}, {"height_m", cfg.area_height}};
  doc["site_geometry"] = {{"terrain_altitude_m", cfg.geometry.terrain_altitude},
                          {"station_altitude_m", cfg.geometry.station_altitude},
                          {"reference_altitude_m", cfg.geometry.reference_altitude},
                          {"surface_roughness_m", cfg.geometry.surface_roughness}};
  const PhysicalConstants& k = cfg.constants;
  doc["constants"] = {{"dry_air_gas_constant", k.dry_air_gas_constant},
                      {"vapor_gas_constant", k.vapor_gas_constant},
                      {"universal_gas_constant", k.universal_gas_constant},
                      {"air_molar_mass", k.air_molar_mass},
                      {"sea_level_gravity", k.sea_level_gravity},
                      {"earth_radius", k.earth_radius}};
  const AltitudeBounds& ab = cfg.altitude_bounds;
  auto range = [](const Range& r) { return ordered_json::array({r.low, r.high}); };
  doc["altitude_bounds"] = {{"building_m", range(ab.building)},
                            {"antenna_m", range(ab.antenna)},
                            {"pv_m", range(ab.pv)},
                            {"wind_turbine_m", range(ab.turbine)}};
  doc["bands"] = ordered_json::array();
  for (const auto& b : cfg.bands) doc["bands"].push_back(write_band(b));
  const CellEnergyConfig& e = cfg.cell;
  doc["cell"] = {{"fixed_power_w", e.fixed_power},
                 {"oscillator_power_w", e.oscillator_power},
                 {"circuit_power_w", e.circuit_power},
                 {"coding_power_w_per_gbps", e.coding_power},
                 {"decoding_power_w_per_gbps", e.decoding_power},
                 {"backhaul_power_w_per_gbps", e.backhaul_power},
                 {"auxiliary_power_w", e.auxiliary_power},
                 {"compute_efficiency_flops_per_w", e.compute_efficiency},
                 {"amplifier_efficiency", e.amplifier_efficiency},
                 {"cooling_loss", e.cooling_loss},
                 {"circuit_heat_coeff", e.circuit_heat_coeff},
                 {"room_length_m", e.room_length},
                 {"room_width_m", e.room_width},
                 {"room_height_m", e.room_height},
                 {"room_target_temperature_c", e.room_target_temperature},
                 {"room_heat_coeff", e.room_heat_coeff},
                 {"dc_loss", e.dc_loss}};
  if (cfg.pv) {
    const PvArrayConfig& p = *cfg.pv;
    doc["pv"] = {{"count_serial", p.count_serial},
                 {"count_parallel", p.count_parallel},
                 {"rated_power_w", p.rated_power},
                 {"derating", p.derating},
                 {"temp_coeff_per_c", p.temp_coeff},
                 {"stc_irradiance_wm2", p.stc_irradiance},
                 {"noct_irradiance_wm2", p.noct_irradiance},
                 {"stc_cell_temperature_c", p.stc_cell_temperature},
                 {"noct_cell_temperature_c", p.noct_cell_temperature},
                 {"noct_ambient_c", p.noct_ambient},
                 {"transmittance", p.transmittance},
                 {"absorptance", p.absorptance},
                 {"module_length_m", p.module_length},
                 {"module_width_m", p.module_width},
                 {"nominal_voltage_v", p.nominal_voltage},
                 {"mpp_voltage_v", p.mpp_voltage},
                 {"mpp_current_a", p.mpp_current}};
  } else {
    doc["pv"] = nullptr;
  }
  if (cfg.wind_turbine) {
    const WindTurbineConfig& t = *cfg.wind_turbine;
    ordered_json curve = ordered_json::array();
    for (const auto& p : t.power_curve) curve.push_back({p.speed, p.power});
    doc["wind_turbine"] = {{"rated_power_w", t.rated_power},
                           {"rated_speed_mps", t.rated_speed},
                           {"cut_in_mps", t.cut_in},
                           {"cut_out_mps", t.cut_out},
                           {"count_serial", t.count_serial},
                           {"count_parallel", t.count_parallel},
                           {"stc_air_density_kgm3", t.stc_air_density},
                           {"rotor_radius_m", t.rotor_radius},
                           {"blade_count", t.blade_count},
                           {"nominal_voltage_v", t.nominal_voltage},
                           {"power_curve", curve}};
  } else {
    doc["wind_turbine"] = nullptr;
  }
  const BatteryConfig& b = cfg.battery;
  doc["battery"] = {{"unit_energy_wh", b.unit_energy},
                    {"count_serial", b.count_serial},
                    {"count_parallel", b.count_parallel},
                    {"efficiency", b.efficiency},
                    {"initial_soc", b.initial_soc},
                    {"max_dod", b.max_dod},
                    {"cycle_life", b.cycle_life},
                    {"nominal_voltage_v", b.nominal_voltage},
                    {"charge_voltage_v", b.charge_voltage},
                    {"discharge_voltage_v", b.discharge_voltage},
                    {"charge_current_a", b.charge_current},
                    {"rapid_charge_current_a", b.rapid_charge_current},
                    {"discharge_current_a", b.discharge_current},
                    {"capacity_ah", b.capacity_ah}};
  const UserSpec& u = cfg.users;
  ordered_json demand = {{"distribution", u.demand.kind == DemandSpec::Kind::Constant ? "constant" : "uniform"},
                         {"value", u.demand.value},
                         {"low", u.demand.low},
                         {"high", u.demand.high}};
  doc["users"] = {{"count", u.count},
                  {"demand_mbps", demand},
                  {"antenna_height_m", u.antenna_height},
                  {"tx_power_max_dbm", u.tx_power_max},
                  {"antenna_gain_dbi", u.antenna_gain}};
  doc["mcs_table"] = ordered_json::array();
  for (const auto& row : cfg.mcs_table) doc["mcs_table"].push_back({row.spectral_efficiency, row.snr});
  doc["buildings"] = ordered_json::array();
  for (const auto& bld : cfg.buildings) {
    ordered_json fp = ordered_json::array();
    for (const auto& p : bld.footprint) fp.push_back({p.x, p.y});
    doc["buildings"].push_back({{"height_m", bld.height}, {"footprint", fp}});
  }
  doc["sites"] = ordered_json::array();
  for (const auto& s : cfg.sites) {
    doc["sites"].push_back({{"name", s.name},
                            {"x", s.position.x},
                            {"y", s.position.y},
                            {"building_altitude_m", s.building_altitude},
                            {"antenna_height_m", s.antenna_height},
                            {"pv_altitude_m", s.pv_altitude},
                            {"turbine_altitude_m", s.turbine_altitude}});
  }
  return doc.dump(2) + "\n";
}

WeatherTrace parse_weather(std::string_view text, const SimulationWindow& window, std::string_view source) {
  return select_window(parse_weather_rows(text, source), window, std::string(source));
}

WeatherTrace load_weather(const std::filesystem::path& path, const SimulationWindow& window) {
  return parse_weather(read_text_file(path), window, path.string());
}

WeatherTrace load_weather(const std::vector<std::filesystem::path>& paths, const SimulationWindow& window) {
  std::vector<WeatherSample> rows;
  std::string names;
  for (const auto& path : paths) {
    const auto part = parse_weather_rows(read_text_file(path), path.string());
    if (!rows.empty() && !part.empty() && part.front().step <= rows.back().step) {
      throw Error(ErrorKind::NonMonotoneTimestamps,
                  path.string() + ": steps overlap the preceding weather file");
    }
    rows.insert(rows.end(), part.begin(), part.end());
    names += (names.empty() ? "" : "+") + path.string();
  }
  return select_window(rows, window, names);
}

std::string format_weather(const WeatherTrace& trace) {
  std::string out(kWeatherHeader);
  out += '\n';
  for (const auto& s : trace.samples) {
    out += fmt::format("{},{},{},{},{}\n", s.step, s.station_temperature, s.station_wind_speed, s.irradiance,
                       s.station_pressure);
  }
  return out;
}

bool inside_footprint(const Point& p, const Building& building) {
  return bg::covered_by(BgPoint(p.x, p.y), to_polygon(building));
}

std::vector<UserTerminal> generate_users(const ScenarioConfig& cfg, std::uint64_t seed) {
  std::vector<BgPolygon> polygons;
  polygons.reserve(cfg.buildings.size());
  for (const auto& b : cfg.buildings) polygons.push_back(to_polygon(b));

  std::mt19937_64 rng(seed);
  std::vector<UserTerminal> users;
  users.reserve(static_cast<std::size_t>(cfg.users.count));
  for (int i = 0; i < cfg.users.count; ++i) {
    UserTerminal user;
    user.antenna_height = cfg.users.antenna_height;
    user.tx_power_max = cfg.users.tx_power_max;
    user.antenna_gain = cfg.users.antenna_gain;
    bool placed = false;
    for (int attempt = 0; attempt < kPlacementAttempts && !placed; ++attempt) {
      user.position = {unit_draw(rng) * cfg.area_width, unit_draw(rng) * cfg.area_height};
      const BgPoint pt(user.position.x, user.position.y);
      placed = std::none_of(polygons.begin(), polygons.end(),
                            [&](const BgPolygon& poly) { return bg::covered_by(pt, poly); });
    }
    if (!placed) {
      throw Error(ErrorKind::PlacementExhausted,
                  "no outdoor position found for user " + std::to_string(i) + " after " +
                      std::to_string(kPlacementAttempts) + " draws");
    }
    const DemandSpec& d = cfg.users.demand;
    user.demand = d.kind == DemandSpec::Kind::Constant ? d.value : d.low + unit_draw(rng) * (d.high - d.low);
    users.push_back(user);
  }
  return users;
}

std::uint64_t run_seed(std::uint64_t seed, int run) {
  return splitmix64(seed ^ splitmix64(0x5EED0000ULL + static_cast<std::uint64_t>(run)));
}

}  // namespace res5g
