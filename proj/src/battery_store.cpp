#include "res5g/battery_store.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "res5g/error.hpp"

namespace res5g {

void validate(const BatteryConfig& cfg) {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw Error(ErrorKind::ValidationError, std::string("battery.") + what);
  };
  require(cfg.unit_energy > 0.0, "unit_energy must be > 0");
  require(cfg.count_serial >= 1 && cfg.count_parallel >= 1, "counts must be >= 1");
  require(cfg.efficiency > 0.0 && cfg.efficiency <= 1.0, "efficiency must be in (0, 1]");
  require(cfg.initial_soc >= 0.0 && cfg.initial_soc <= 1.0, "initial_soc must be in [0, 1]");
  require(cfg.max_dod >= 0.0 && cfg.max_dod <= 1.0, "max_dod must be in [0, 1]");
  require(cfg.initial_soc >= 1.0 - cfg.max_dod, "initial_soc must not start below the discharge floor");
}

double max_energy(const BatteryConfig& cfg) {
  return cfg.count_serial * cfg.count_parallel * cfg.unit_energy;
}

BatteryEnvelope envelope(const BatteryConfig& cfg) {
  const double ceiling = max_energy(cfg);
  return {cfg.efficiency, ceiling * (1.0 - cfg.max_dod), ceiling};
}

BatteryState initial_state(const BatteryConfig& cfg) { return {cfg.initial_soc * max_energy(cfg)}; }

double energy_balance(double pv_power, double wt_power, double cell_power, double dc_loss, double dt_hours) {
  return (pv_power + wt_power - cell_power / (1.0 - dc_loss)) * dt_hours;
}

BatteryStep apply_step(BatteryState state, const BatteryEnvelope& env, double balance) {
  BatteryStep out{state, {}};
  const double stored = state.stored_energy;
  if (balance > 0.0) {
    const double headroom = std::max(env.ceiling - stored, 0.0);
    const double delta = std::min(balance * env.efficiency, headroom);
    out.result.battery_delta = delta;
    out.result.spilled_energy = std::max(balance - delta / env.efficiency, 0.0);
  } else if (balance < 0.0) {
    const double available = std::max(stored - env.floor, 0.0);
    const double delta = std::max(balance / env.efficiency, -available);
    const double delivered = -delta * env.efficiency;
    out.result.battery_delta = delta;
    out.result.grid_energy = std::max(-balance - delivered, 0.0);
  }
  out.state.stored_energy = stored + out.result.battery_delta;
  return out;
}

BatteryStep apply_step(BatteryState state, const BatteryConfig& cfg, double balance) {
  return apply_step(state, envelope(cfg), balance);
}

}  // namespace res5g
