// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>

#include "oracle.hpp"
#include "res5g/battery_store.hpp"
#include "res5g/cli.hpp"
#include "res5g/sim_engine.hpp"
#include "res5g/units.hpp"

using namespace res5g;
namespace fs = std::filesystem;

namespace {

const std::string kData = RES5G_DATA_DIR;
const std::string kScenario = kData + "/scenarios/poznan_synthetic.json";
const std::string kWeather = kData + "/weather/seasons_synthetic.csv";

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Collects the worst relative error seen and the first failure message.
struct Check {
  Outcome& o;
  double worst = 0.0;
  void near(double got, double want, double rel, double abs, const std::string& what) {
    const double err = std::abs(got - want);
    if (std::abs(want) > 1e-6) worst = std::max(worst, err / std::abs(want));
    if (err > rel * std::abs(want) + abs) fail(fmt(what, got, want));
  }
  void that(bool ok, const std::string& what) {
    if (!ok) fail(what);
  }
  void fail(const std::string& what) {
    if (o.pass) o.detail = what;
    o.pass = false;
  }
  static std::string fmt(const std::string& what, double got, double want) {
    std::ostringstream s;
    s.precision(17);
    s << what << ": got " << got << " want " << want;
    return s.str();
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

oracle::Cell to_oracle(const CellRadioConfig& r, const CellEnergyConfig& e) {
  return {r.channel_bandwidth, r.coherence_bandwidth, r.coherence_time, e.compute_efficiency,
          static_cast<double>(r.pilot_reuse), r.duty_dl, r.duty_ul, e.fixed_power, e.oscillator_power,
          e.circuit_power, e.coding_power, e.decoding_power, e.backhaul_power, e.auxiliary_power,
          e.amplifier_efficiency, e.cooling_loss, e.circuit_heat_coeff, e.room_length, e.room_width,
          e.room_height, e.room_target_temperature, e.room_heat_coeff};
}

oracle::Load to_oracle(const CellLoad& l) {
  return {static_cast<double>(l.served_users), static_cast<double>(l.active_antennas), l.transmit_power,
          l.traffic_dl, l.traffic_ul};
}

oracle::Pv to_oracle(const PvArrayConfig& p) {
  return {static_cast<double>(module_count(p)), p.rated_power, p.derating, p.temp_coeff, p.stc_irradiance,
          p.noct_irradiance, p.stc_cell_temperature, p.noct_cell_temperature, p.noct_ambient,
          p.transmittance, p.absorptance, p.module_length, p.module_width};
}

WeatherSample sample(double t, double v, double g, double p = 101325.0) { return {0, t, v, g, p}; }

Outcome formula_oracles() {
  Outcome o;
  Check c{o};
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(20240601);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  auto in = [&](double lo, double hi) { return lo + (hi - lo) * u(rng); };
  const PhysicalConstants k;
  for (int i = 0; i < 200; ++i) {
    SiteGeometry g;
    g.terrain_altitude = in(20, 120);
    g.station_altitude = in(60, 140);
    g.surface_roughness = in(0.5, 3.0);
    const WeatherSample s = sample(in(-25, 38), in(0, 25), in(0, 1100), in(96000, 104000));
    const double h = in(0, 60);

    const double ta = oracle::temperature(s.station_temperature, g.station_altitude, g.terrain_altitude, h);
    const double pa = oracle::pressure(s.station_pressure, ta, h, g.terrain_altitude, g.reference_altitude,
                                       k.sea_level_gravity, k.earth_radius, k.air_molar_mass,
                                       k.universal_gas_constant);
    const double rho = oracle::density(ta, pa, oracle::vapor(ta), k.dry_air_gas_constant, k.vapor_gas_constant);
    const double vh = oracle::wind(s.station_wind_speed, g.station_altitude, g.terrain_altitude,
                                   g.surface_roughness, h);
    c.near(temperature_at(s, g, h), ta, 1e-9, 1e-12, "temperature");
    c.near(gravity_at(k, h), oracle::gravity(k.sea_level_gravity, k.earth_radius, h), 1e-9, 0, "gravity");
    c.near(pressure_at(s, g, k, h), pa, 1e-9, 0, "pressure");
    c.near(air_density_at(s, g, k, h), rho, 1e-9, 0, "density");
    c.near(wind_speed_at(s, g, h), vh, 1e-9, 1e-15, "wind speed");

    const int b = static_cast<int>(in(0, 3));
    CellRadioConfig r = b == 0 ? band_800() : b == 1 ? band_2100() : band_3500();
    r.duty_dl = in(0.5, 0.9);
    r.duty_ul = 1.0 - r.duty_dl;
    CellEnergyConfig e;
    e.amplifier_efficiency = in(0.2, 0.6);
    e.room_target_temperature = in(15, 25);
    const int m = 1 + static_cast<int>(in(0, r.max_antenna_elements - 1));
    const CellLoad l{static_cast<int>(in(0, 300)), m, in(0, 1) * units::dbm_to_watts(r.max_transmit_power),
                     in(0, 2), in(0, 1)};
    const double want = oracle::p_mimo(to_oracle(r, e), to_oracle(l), ta);
    c.near(total_cell_power(l, ta, r, e).total, want, 1e-9, 0, "cell power");

    PvArrayConfig pv;
    pv.temp_coeff = in(-0.006, -0.003);
    pv.derating = in(0.6, 0.95);
    const auto opv = to_oracle(pv);
    const double tc = oracle::pv_cell_temperature(opv, ta, s.irradiance);
    c.near(cell_temperature(ta, s.irradiance, pv), tc, 1e-9, 1e-12, "pv cell temperature");
    c.near(pv_power(s.irradiance, ta, pv), oracle::pv_power(opv, s.irradiance, tc), 1e-9, 1e-12, "pv power");

    const WindTurbineConfig wt;
    c.near(wt_power_from(vh, rho, wt),
           oracle::wt_power(vh, rho, 1.0, wt.rated_power, wt.cut_in, wt.rated_speed, wt.cut_out,
                            wt.stc_air_density),
           1e-9, 1e-12, "wind power");

    const double p_pv = in(0, 900), p_wt = in(0, 1000), p_m = in(10, 3000), dt = in(0.25, 1.0);
    const double de = oracle::energy_balance(p_pv, p_wt, p_m, e.dc_loss, dt);
    c.near(energy_balance(p_pv, p_wt, p_m, e.dc_loss, dt), de, 1e-9, 1e-12, "energy balance");

    const BatteryEnvelope env{in(0.8, 1.0), in(0, 2000), in(5000, 20000)};
    const double stored = in(env.floor, env.ceiling);
    const BatteryStep got = apply_step({stored}, env, de * 10.0);
    const auto want_b = oracle::battery(stored, env.ceiling, env.floor, env.efficiency, de * 10.0);
    c.near(got.state.stored_energy, want_b.stored, 1e-9, 1e-9, "battery energy");
    c.near(got.result.grid_energy, want_b.grid, 1e-9, 1e-9, "grid energy");
    c.near(got.result.spilled_energy, want_b.spilled, 1e-9, 1e-9, "spilled energy");
  }
  const double elapsed = seconds_since(t0);
  c.that(elapsed < 10.0, "runtime over 10 s");
  std::ostringstream d;
  d << "200 draws, worst relative error " << c.worst << ", " << elapsed << " s";
  if (o.pass) o.detail = d.str();
  return o;
}

Outcome stc_identities() {
  Outcome o;
  Check c{o};
  const PvArrayConfig pv;
  const double pv_stc = pv_power_at_cell_temperature(1000.0, 25.0, pv);
  c.near(pv_stc, module_count(pv) * pv.rated_power * pv.derating, 1e-12, 0, "pv at stc");
  c.near(pv_stc, 925.44, 1e-12, 0, "pv at stc");
  const WindTurbineConfig wt;
  const double wt_stc = wt_power_from(wt.rated_speed, wt.stc_air_density, wt);
  c.near(wt_stc, turbine_count(wt) * wt.rated_power, 1e-12, 0, "wt at rated speed");
  const double rho = moist_air_density(15.0, 101325.0, 0.0, PhysicalConstants{});
  c.near(rho, 1.225, 1e-3, 0, "dry air at 15 C");
  std::ostringstream d;
  d.precision(6);
  d << "pv " << pv_stc << " W, wt " << wt_stc << " W, rho " << rho << " kg/m^3";
  if (o.pass) o.detail = d.str();
  return o;
}

Outcome battery_conservation() {
  Outcome o;
  Check c{o};
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> de(-3000.0, 3000.0), eff(0.7, 1.0);
  for (int walk = 0; walk < 4; ++walk) {
    const BatteryEnvelope env{eff(rng), 1000.0 * walk, 18672.0};
    BatteryState s{env.ceiling};
    for (int i = 0; i < 10000; ++i) {
      const double e = de(rng);
      const BatteryStep st = apply_step(s, env, e);
      const auto& r = st.result;
      c.that(st.state.stored_energy >= env.floor - 1e-9 && st.state.stored_energy <= env.ceiling + 1e-9,
             "stored energy left its bounds");
      c.that(r.grid_energy >= 0.0 && r.spilled_energy >= 0.0, "negative grid or spill");
      c.near(st.state.stored_energy - s.stored_energy, r.battery_delta, 0, 1e-9, "stored change");
      if (e >= 0.0) {
        c.near(r.battery_delta / env.efficiency + r.spilled_energy, e, 0, 1e-9, "surplus split");
        c.that(r.grid_energy == 0.0, "grid draw on surplus");
      } else {
        c.near(-r.battery_delta * env.efficiency + r.grid_energy, -e, 0, 1e-9, "deficit split");
        c.that(r.spilled_energy == 0.0, "spill on deficit");
      }
      s = st.state;
    }
  }
  // Lossless, unbounded bank on dyadic steps: exact running sum.
  const BatteryEnvelope ideal{1.0, -1e300, 1e300};
  BatteryState s{0.0};
  double sum = 0.0;
  std::uniform_int_distribution<int> q(-4096, 4096);
  for (int i = 0; i < 10000; ++i) {
    const double e = q(rng) / 8.0;
    sum += e;
    s = apply_step(s, ideal, e).state;
    c.that(s.stored_energy == sum, "ideal bank drifted from the running sum");
  }
  if (o.pass) o.detail = "4 lossy walks + 1 ideal walk of 10000 steps";
  return o;
}

Outcome cooling_cases() {
  Outcome o;
  Check c{o};
  const CellEnergyConfig e;
  const double k = room_surface_area(e) * e.room_heat_coeff;
  const double p_cp = 500.0;
  const double heat = p_cp * e.circuit_heat_coeff;
  const double ts = e.room_target_temperature;
  const double edge = ts - heat / k;  // below this the walls shed all the heat
  c.that(cooling_power(p_cp, edge - 5.0, e) == 0.0, "cold case not zero");
  const double mid = cooling_power(p_cp, (edge + ts) / 2.0, e);
  c.that(mid > 0.0 && mid < heat, "intermediate case out of range");
  c.that(cooling_power(p_cp, ts + 5.0, e) > heat, "hot case not above internal heat");
  const double eps = 1e-9;
  c.near(cooling_power(p_cp, edge + eps, e), cooling_power(p_cp, edge - eps, e), 0, 1e-6, "lower boundary");
  c.near(cooling_power(p_cp, ts + eps, e), cooling_power(p_cp, ts - eps, e), 0, 1e-6, "upper boundary");
  c.near(cooling_power(p_cp, ts, e), heat, 0, 1e-6, "at target");
  if (o.pass) {
    std::ostringstream d;
    d << "three cases hit, boundaries at " << edge << " and " << ts << " degC";
    o.detail = d.str();
  }
  return o;
}

ScenarioConfig toy_scenario() {
  ScenarioConfig cfg;
  cfg.name = "toy";
  cfg.runs = 1;
  cfg.area_width = 400.0;
  cfg.area_height = 400.0;
  cfg.bands = {band_3500()};
  BaseStationSite s;
  s.name = "A";
  s.position = {200.0, 200.0};
  s.cells = cfg.bands;
  cfg.sites = {s};
  cfg.users.count = 30;
  cfg.window.step_count = 24;
  cfg.window.day_labels = {"toy"};
  cfg.battery.count_parallel = 1;
  cfg.battery.max_dod = 0.8;
  cfg.modes = {ResMode::None};
  cfg.pv.reset();
  cfg.wind_turbine.reset();
  validate(cfg);
  return cfg;
}

Outcome baseline_closure() {
  Outcome o;
  Check c{o};
  const ScenarioConfig cfg = toy_scenario();
  WeatherTrace w;
  for (long i = 0; i < 24; ++i) w.samples.push_back({i, 5.0 + 20.0 * i / 23.0, 6.0, 400.0, 101325.0});
  const RunLedger r = simulate_run(cfg, w, ResMode::None, 3);
  double demand = 0.0, grid = 0.0;
  for (long s = 0; s < r.step_count; ++s) {
    for (std::size_t cell = 0; cell < r.cells.size(); ++cell) {
      demand += r.at(s, cell).power.total / (1.0 - cfg.cell.dc_loss) * r.dt_hours;
      grid += r.at(s, cell).grid;
    }
  }
  const BatteryEnvelope env = envelope(cfg.battery);
  const double delivered = (initial_state(cfg.battery).stored_energy - env.floor) * env.efficiency;
  c.that(demand > delivered, "toy battery never depleted");
  c.near(grid, demand - delivered, 1e-6, 0, "baseline grid energy");
  const RunSummary m = compute_metrics({{ResMode::None, {r}}}, cfg.window, 1.0 - cfg.battery.max_dod);
  const PeriodMetrics& day = m.modes.at(0).days.at(0);
  c.that(day.aebl && *day.aebl == 0.0, "baseline AEBL not zero");
  c.that(day.arec && *day.arec == 0.0, "baseline AREC not zero");
  if (o.pass) {
    std::ostringstream d;
    d.precision(8);
    d << "grid " << grid << " Wh = demand " << demand << " - battery " << delivered;
    o.detail = d.str();
  }
  return o;
}

struct Bundled {
  ScenarioConfig cfg;
  WeatherTrace weather;
  RunSummary summary;
};

const Bundled& bundled() {
  static const Bundled b = [] {
    Bundled x;
    x.cfg = parse_scenario(read_text_file(kScenario));
    x.weather = load_weather(std::vector<fs::path>{kWeather}, x.cfg.window);
    std::map<ResMode, std::vector<RunLedger>> ledgers;
    for (ResMode m : {ResMode::None, ResMode::Pv, ResMode::Wt, ResMode::PvWt}) {
      ledgers[m] = simulate_runs(x.cfg, x.weather, m);
    }
    x.summary = compute_metrics(ledgers, x.cfg.window, 1.0 - x.cfg.battery.max_dod);
    return x;
  }();
  return b;
}

const ModeSummary& mode_of(const RunSummary& s, ResMode m) {
  for (const auto& ms : s.modes)
    if (ms.mode == m) return ms;
  throw std::runtime_error("mode missing from summary");
}

Outcome table_ordering() {
  Outcome o;
  Check c{o};
  const Bundled& b = bundled();
  const auto& pv = mode_of(b.summary, ResMode::Pv);
  const auto& wt = mode_of(b.summary, ResMode::Wt);
  const auto& both = mode_of(b.summary, ResMode::PvWt);
  std::size_t winter = 0, summer = 0;
  for (std::size_t d = 0; d < both.days.size(); ++d) {
    const std::string& label = both.days[d].label;
    c.that(both.days[d].arec && pv.days[d].arec && wt.days[d].arec, "AREC undefined on " + label);
    if (!o.pass) return o;
    c.that(*both.days[d].arec >= std::max(*pv.days[d].arec, *wt.days[d].arec),
           "AREC(pv+wt) below a single source on " + label);
    if (label.find("winter") != std::string::npos) winter = d;
    if (label.find("summer") != std::string::npos) summer = d;
  }
  c.that(*wt.days[winter].arec > *pv.days[winter].arec, "winter AREC(wt) not above AREC(pv)");
  for (std::size_t d = 0; d < pv.days.size(); ++d) {
    if (d != summer) c.that(pv.days[summer].pv_kwh > pv.days[d].pv_kwh, "summer PV harvest not the largest");
  }
  if (o.pass) {
    std::ostringstream d;
    d.precision(4);
    d << "winter AREC wt " << *wt.days[winter].arec << "% > pv " << *pv.days[winter].arec << "%, summer PV "
      << pv.days[summer].pv_kwh << " kWh";
    o.detail = d.str();
  }
  return o;
}

Outcome magnitudes() {
  Outcome o;
  Check c{o};
  const CellRadioConfig r = band_3500();
  const CellEnergyConfig e;
  const CellLoad full{64, r.max_antenna_elements, units::dbm_to_watts(r.max_transmit_power), 1.0, 1.0 / 3.0};
  double lo = 1e300, hi = 0.0;
  for (double t = -15.0; t <= 35.0; t += 1.0) {
    const double p = total_cell_power(full, t, r, e).total;
    lo = std::min(lo, p);
    hi = std::max(hi, p);
  }
  c.that(lo >= 100.0 && hi < 10000.0, "full-load P_MIMO outside [100 W, 10 kW)");
  const auto& both = mode_of(bundled().summary, ResMode::PvWt);
  double peak = 0.0;
  for (const auto& d : both.days) peak = std::max(peak, d.peak_kw);
  c.that(peak >= 1.0 && peak <= 2.0, "pv+wt daily peak outside [1, 2] kW");
  std::ostringstream d;
  d.precision(4);
  d << "full-load P_MIMO " << lo << ".." << hi << " W, pv+wt peak " << peak << " kW";
  if (o.pass) o.detail = d.str();
  return o;
}

struct CliRun {
  int code;
  std::string err;
};

CliRun cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, err.str()};
}

std::string slurp_dir(const fs::path& dir) {
  std::map<std::string, std::string> files;
  for (const auto& f : fs::directory_iterator(dir)) files[f.path().filename().string()] = read_text_file(f.path());
  std::string all;
  for (const auto& [name, text] : files) all += name + "\n" + text;
  return all;
}

Outcome determinism() {
  Outcome o;
  const fs::path base = fs::temp_directory_path() / "res5g_acceptance_determinism";
  fs::remove_all(base);
  const auto t0 = std::chrono::steady_clock::now();
  std::string outputs[2];
  for (int i = 0; i < 2; ++i) {
    const fs::path dir = base / std::to_string(i);
    const CliRun r = cli({"simulate", "--scenario", kScenario, "--weather", kWeather, "--runs", "10", "--seed",
                          "42", "--out", dir.string()});
    if (r.code != 0) return {false, "simulate exited " + std::to_string(r.code) + ": " + r.err};
    outputs[i] = slurp_dir(dir);
  }
  const double elapsed = seconds_since(t0);
  fs::remove_all(base);
  if (outputs[0] != outputs[1]) return {false, "outputs differ between identical runs"};
  if (elapsed >= 60.0) return {false, "two full runs took over 60 s"};
  std::ostringstream d;
  d << outputs[0].size() << " bytes identical, " << elapsed << " s for both";
  o.detail = d.str();
  return o;
}

Outcome golden_report() {
  const fs::path dir = fs::temp_directory_path() / "res5g_acceptance_golden";
  fs::remove_all(dir);
  const CliRun r = cli({"report", "--scenario", kScenario, "--weather", kWeather, "--out", dir.string()});
  if (r.code != 0) return {false, "report exited " + std::to_string(r.code) + ": " + r.err};
  const std::string got = read_text_file(dir / "report.txt");
  const std::string want = read_text_file(fs::path(RES5G_GOLDEN_DIR) / "report.txt");
  fs::remove_all(dir);
  if (got != want) {
    std::size_t line = 1;
    for (std::size_t i = 0; i < std::min(got.size(), want.size()) && got[i] == want[i]; ++i)
      if (got[i] == '\n') ++line;
    return {false, "report differs from golden at line " + std::to_string(line)};
  }
  return {true, "report.txt matches golden (" + std::to_string(got.size()) + " bytes)"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"formula oracles", formula_oracles},     {"STC identities", stc_identities},
      {"battery conservation", battery_conservation}, {"cooling cases", cooling_cases},
      {"baseline closure", baseline_closure},   {"seasonal ordering", table_ordering},
      {"scale check", magnitudes},              {"determinism", determinism},
      {"golden report", golden_report},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& ex) {
      o = {false, std::string("exception: ") + ex.what()};
    }
    if (!o.pass) ++failed;
    std::cout << (o.pass ? "PASS" : "FAIL") << " " << i + 1 << " " << criteria[i].first << ": " << o.detail
              << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
