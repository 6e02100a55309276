#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "res5g/scenario_io.hpp"

namespace res5g {

/// One cell over one step. Powers in W, energies in Wh.
struct CellStep {
  PowerBreakdown power;
  double ambient = 0.0;  // [degC] at the server room
  double p_pv = 0.0;
  double p_wt = 0.0;
  double balance = 0.0;
  double battery_delta = 0.0;
  double grid = 0.0;
  double spilled = 0.0;
  double soc = 0.0;
};

struct CellInfo {
  std::string site;
  std::string band;
  int served_users = 0;
  double transmit_power_dbm = 0.0;  // meaningless when served_users == 0
  double utilisation = 0.0;
};

/// Every cell and step of one run; entries are step-major.
struct RunLedger {
  int run = 0;
  std::uint64_t seed = 0;
  ResMode mode = ResMode::None;
  long start_step = 0;
  long step_count = 0;
  double dt_hours = 1.0;
  std::vector<CellInfo> cells;
  int users = 0;
  int served = 0;
  std::vector<CellStep> entries;

  [[nodiscard]] const CellStep& at(long step, std::size_t cell) const {
    return entries[static_cast<std::size_t>(step) * cells.size() + cell];
  }
  [[nodiscard]] CellStep& at(long step, std::size_t cell) {
    return entries[static_cast<std::size_t>(step) * cells.size() + cell];
  }
};

/// Users are drawn from `seed` and stay put for the whole window. Every
/// battery restarts from its initial charge at each day boundary.
RunLedger simulate_run(const ScenarioConfig& cfg, const WeatherTrace& weather, ResMode mode,
                       std::uint64_t seed, int run = 0);

/// `cfg.runs` runs with seeds run_seed(cfg.seed, r); `threads` = 0 picks the
/// hardware concurrency. Output order does not depend on scheduling.
std::vector<RunLedger> simulate_runs(const ScenarioConfig& cfg, const WeatherTrace& weather, ResMode mode,
                                     unsigned threads = 0);

/// Supply time [h] of one cell's battery over steps [first, last): steps in
/// which it delivered energy or stayed above the floor.
double battery_lifetime(const RunLedger& ledger, std::size_t cell, double floor_soc, long first = 0,
                        std::optional<long> last = std::nullopt);

struct PeriodMetrics {
  std::string label;
  double harvest_kwh = 0.0;  // per cell, pv + wt
  double pv_kwh = 0.0;
  double wt_kwh = 0.0;
  double peak_kw = 0.0;      // per cell mean of the largest hourly harvest
  double demand_kwh = 0.0;   // per cell, DC side
  double grid_kwh = 0.0;     // per cell
  double lifetime_h = 0.0;   // per cell
  std::optional<double> aebl;  // [%], empty when the baseline never supplied
  std::optional<double> arec;  // [%], empty when the baseline drew nothing
};

struct ModeSummary {
  ResMode mode = ResMode::None;
  std::vector<PeriodMetrics> days;
  PeriodMetrics window;
  std::vector<double> soc_trace;
};

struct RunSummary {
  int runs = 0;
  std::size_t cells = 0;
  std::vector<ModeSummary> modes;  // in ResMode order
};

/// Needs the no-RES ledgers as baseline; all modes must share seeds.
RunSummary compute_metrics(const std::map<ResMode, std::vector<RunLedger>>& ledgers,
                           const SimulationWindow& window, double floor_soc);

/// Mean state of charge over cells and runs per step.
std::vector<double> average_soc_trace(const std::vector<RunLedger>& ledgers);

}  // namespace res5g
