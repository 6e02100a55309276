#include "res5g/sim_engine.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <thread>

#include "res5g/error.hpp"

namespace res5g {

namespace {

constexpr double kSocSlack = 1e-12;

struct DaySpan {
  long first = 0;
  long last = 0;
};

std::vector<DaySpan> day_spans(const SimulationWindow& w) {
  std::vector<DaySpan> spans;
  for (long first = 0; first < w.step_count; first += w.day_steps) {
    spans.push_back({first, std::min(first + w.day_steps, w.step_count)});
  }
  return spans;
}

std::string day_label(const SimulationWindow& w, std::size_t day) {
  return day < w.day_labels.size() ? w.day_labels[day] : "day" + std::to_string(day + 1);
}

// Per-cell means over runs for one stretch of steps.
PeriodMetrics period_totals(const std::vector<RunLedger>& runs, long first, long last, double floor_soc) {
  PeriodMetrics m;
  double samples = 0.0;
  for (const RunLedger& ledger : runs) {
    const double dt = ledger.dt_hours;
    for (std::size_t c = 0; c < ledger.cells.size(); ++c) {
      double peak = 0.0;
      for (long s = first; s < last; ++s) {
        const CellStep& e = ledger.at(s, c);
        m.pv_kwh += e.p_pv * dt / 1000.0;
        m.wt_kwh += e.p_wt * dt / 1000.0;
        m.grid_kwh += e.grid / 1000.0;
        m.demand_kwh += (e.p_pv + e.p_wt) * dt / 1000.0 - e.balance / 1000.0;
        peak = std::max(peak, e.p_pv + e.p_wt);
      }
      m.peak_kw += peak / 1000.0;
      m.lifetime_h += battery_lifetime(ledger, c, floor_soc, first, last);
      samples += 1.0;
    }
  }
  if (samples > 0.0) {
    m.pv_kwh /= samples;
    m.wt_kwh /= samples;
    m.grid_kwh /= samples;
    m.demand_kwh /= samples;
    m.peak_kw /= samples;
    m.lifetime_h /= samples;
  }
  m.harvest_kwh = m.pv_kwh + m.wt_kwh;
  return m;
}

std::optional<double> extension(const std::vector<RunLedger>& runs, const std::vector<RunLedger>& base,
                                 long first, long last, double floor_soc) {
  double sum = 0.0;
  double samples = 0.0;
  for (std::size_t r = 0; r < runs.size(); ++r) {
    for (std::size_t c = 0; c < runs[r].cells.size(); ++c) {
      const double lb = battery_lifetime(base[r], c, floor_soc, first, last);
      if (lb <= 0.0) return std::nullopt;
      sum += 100.0 * (battery_lifetime(runs[r], c, floor_soc, first, last) - lb) / lb;
      samples += 1.0;
    }
  }
  return samples > 0.0 ? std::optional<double>(sum / samples) : std::nullopt;
}

std::optional<double> reduction(double grid, double base_grid) {
  if (!(base_grid > 0.0)) return std::nullopt;
  return 100.0 * (base_grid - grid) / base_grid;
}

void check_pairing(const std::vector<RunLedger>& runs, const std::vector<RunLedger>& base) {
  if (runs.size() != base.size()) throw Error(ErrorKind::ValidationError, "modes disagree on the run count");
  for (std::size_t r = 0; r < runs.size(); ++r) {
    if (runs[r].seed != base[r].seed || runs[r].cells.size() != base[r].cells.size() ||
        runs[r].step_count != base[r].step_count) {
      throw Error(ErrorKind::ValidationError, "modes must share seeds, cells and window");
    }
  }
}

}  // namespace

RunLedger simulate_run(const ScenarioConfig& cfg, const WeatherTrace& weather, ResMode mode,
                       std::uint64_t seed, int run) {
  const SimulationWindow& w = cfg.window;
  if (static_cast<long>(weather.samples.size()) < w.step_count) {
    throw Error(ErrorKind::MissingStep, "weather trace is shorter than the simulation window");
  }
  if (uses_pv(mode) && !cfg.pv) throw Error(ErrorKind::ValidationError, "mode needs a pv plant");
  if (uses_wt(mode) && !cfg.wind_turbine) throw Error(ErrorKind::ValidationError, "mode needs a wind turbine");

  RunLedger ledger;
  ledger.run = run;
  ledger.seed = seed;
  ledger.mode = mode;
  ledger.start_step = w.start_step;
  ledger.step_count = w.step_count;
  ledger.dt_hours = w.dt_hours;

  const auto users = generate_users(cfg, seed);
  const AssociationResult assoc = associate(users, cfg.sites, cfg.mcs_table);
  ledger.users = static_cast<int>(users.size());
  ledger.served = assoc.served;
  for (const CellAssociation& a : assoc.cells) {
    const BaseStationSite& site = cfg.sites[static_cast<std::size_t>(a.site)];
    ledger.cells.push_back({site.name, site.cells[static_cast<std::size_t>(a.band)].band, a.load.served_users,
                            a.transmit_power_dbm.value_or(0.0), a.utilisation});
  }

  const std::size_t n_cells = assoc.cells.size();
  const BatteryEnvelope env = envelope(cfg.battery);
  const double capacity = max_energy(cfg.battery);
  std::vector<BatteryState> banks(n_cells, initial_state(cfg.battery));
  ledger.entries.resize(static_cast<std::size_t>(w.step_count) * n_cells);

  for (long step = 0; step < w.step_count; ++step) {
    if (step % w.day_steps == 0) std::fill(banks.begin(), banks.end(), initial_state(cfg.battery));
    const WeatherSample& sample = weather.samples[static_cast<std::size_t>(step)];
    for (std::size_t c = 0; c < n_cells; ++c) {
      const CellAssociation& a = assoc.cells[c];
      const BaseStationSite& site = cfg.sites[static_cast<std::size_t>(a.site)];
      const CellRadioConfig& radio = site.cells[static_cast<std::size_t>(a.band)];
      CellStep& e = ledger.at(step, c);
      e.ambient = temperature_at(sample, cfg.geometry, site.building_altitude);
      e.power = total_cell_power(a.load, e.ambient, radio, cfg.cell);
      if (uses_pv(mode)) {
        e.p_pv = pv_power(sample.irradiance, temperature_at(sample, cfg.geometry, site.pv_altitude), *cfg.pv);
      }
      if (uses_wt(mode)) {
        e.p_wt = wt_power(sample, cfg.geometry, cfg.constants, *cfg.wind_turbine, site.turbine_altitude);
      }
      e.balance = energy_balance(e.p_pv, e.p_wt, e.power.total, cfg.cell.dc_loss, w.dt_hours);
      const BatteryStep next = apply_step(banks[c], env, e.balance);
      banks[c] = next.state;
      e.battery_delta = next.result.battery_delta;
      e.grid = next.result.grid_energy;
      e.spilled = next.result.spilled_energy;
      e.soc = banks[c].stored_energy / capacity;
    }
  }
  return ledger;
}

std::vector<RunLedger> simulate_runs(const ScenarioConfig& cfg, const WeatherTrace& weather, ResMode mode,
                                     unsigned threads) {
  const auto runs = static_cast<std::size_t>(cfg.runs);
  std::vector<RunLedger> out(runs);
  std::vector<std::exception_ptr> errors(runs);
  if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, runs));

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t r = next++; r < runs; r = next++) {
      try {
        out[r] = simulate_run(cfg, weather, mode, run_seed(cfg.seed, static_cast<int>(r)), static_cast<int>(r));
      } catch (...) {
        errors[r] = std::current_exception();
      }
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

double battery_lifetime(const RunLedger& ledger, std::size_t cell, double floor_soc, long first,
                        std::optional<long> last) {
  const long end = last.value_or(ledger.step_count);
  long supplied = 0;
  for (long s = first; s < end; ++s) {
    const CellStep& e = ledger.at(s, cell);
    if (e.battery_delta < 0.0 || e.soc > floor_soc + kSocSlack) ++supplied;
  }
  return static_cast<double>(supplied) * ledger.dt_hours;
}

std::vector<double> average_soc_trace(const std::vector<RunLedger>& ledgers) {
  if (ledgers.empty()) return {};
  std::vector<double> trace(static_cast<std::size_t>(ledgers.front().step_count), 0.0);
  double samples = 0.0;
  for (const RunLedger& ledger : ledgers) {
    for (std::size_t c = 0; c < ledger.cells.size(); ++c) {
      for (long s = 0; s < ledger.step_count; ++s) trace[static_cast<std::size_t>(s)] += ledger.at(s, c).soc;
      samples += 1.0;
    }
  }
  for (double& v : trace) v /= samples;
  return trace;
}

RunSummary compute_metrics(const std::map<ResMode, std::vector<RunLedger>>& ledgers,
                           const SimulationWindow& window, double floor_soc) {
  const auto base_it = ledgers.find(ResMode::None);
  if (base_it == ledgers.end() || base_it->second.empty()) {
    throw Error(ErrorKind::ValidationError, "metrics need the no-RES baseline");
  }
  const std::vector<RunLedger>& base = base_it->second;

  RunSummary summary;
  summary.runs = static_cast<int>(base.size());
  summary.cells = base.front().cells.size();
  const auto spans = day_spans(window);

  for (const auto& [mode, runs] : ledgers) {
    check_pairing(runs, base);
    ModeSummary ms;
    ms.mode = mode;
    auto fill = [&](PeriodMetrics& m, long first, long last) {
      if (mode == ResMode::None) {
        m.aebl = 0.0;
        m.arec = 0.0;
        return;
      }
      m.aebl = extension(runs, base, first, last, floor_soc);
      m.arec = reduction(m.grid_kwh, period_totals(base, first, last, floor_soc).grid_kwh);
    };
    for (std::size_t d = 0; d < spans.size(); ++d) {
      PeriodMetrics m = period_totals(runs, spans[d].first, spans[d].last, floor_soc);
      m.label = day_label(window, d);
      fill(m, spans[d].first, spans[d].last);
      ms.days.push_back(std::move(m));
    }
    ms.window = period_totals(runs, 0, window.step_count, floor_soc);
    ms.window.label = "window";
    fill(ms.window, 0, window.step_count);
    ms.soc_trace = average_soc_trace(runs);
    summary.modes.push_back(std::move(ms));
  }
  return summary;
}

}  // namespace res5g
