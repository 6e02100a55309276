#pragma once

namespace res5g {

/// Accumulator bank of one cell. Defaults: six 51.2 V 60 Ah LiFePO4 units
/// in parallel.
struct BatteryConfig {
  double unit_energy = 3112.0;  // [Wh]
  int count_serial = 1;
  int count_parallel = 6;
  double efficiency = 0.95;
  double initial_soc = 1.0;
  double max_dod = 1.0;
  // Ratings below are carried for reference; the hourly model has no rate limit.
  int cycle_life = 2000;
  double nominal_voltage = 51.2;     // [V]
  double charge_voltage = 57.6;      // [V]
  double discharge_voltage = 51.2;   // [V]
  double charge_current = 30.0;      // [A]
  double rapid_charge_current = 50.0;  // [A]
  double discharge_current = 50.0;   // [A]
  double capacity_ah = 60.78;        // [Ah]
};

void validate(const BatteryConfig& cfg);

/// Energy window the bank may move within.
struct BatteryEnvelope {
  double efficiency = 1.0;
  double floor = 0.0;    // [Wh]
  double ceiling = 0.0;  // [Wh]
};

[[nodiscard]] double max_energy(const BatteryConfig& cfg);
[[nodiscard]] BatteryEnvelope envelope(const BatteryConfig& cfg);

struct BatteryState {
  double stored_energy = 0.0;  // [Wh]
};

[[nodiscard]] BatteryState initial_state(const BatteryConfig& cfg);

struct StepEnergyResult {
  double battery_delta = 0.0;   // [Wh], signed change of stored energy
  double grid_energy = 0.0;     // [Wh] deficit covered by the grid
  double spilled_energy = 0.0;  // [Wh] surplus the full bank rejected
};

struct BatteryStep {
  BatteryState state;
  StepEnergyResult result;
};

/// Energy balance over one step [Wh]: harvest minus the DC-side demand.
double energy_balance(double pv_power, double wt_power, double cell_power, double dc_loss, double dt_hours);

/// Advances the bank by one step. A surplus charges the bank at the given
/// efficiency until it is full; a deficit drains it down to the floor and the
/// remainder comes from the grid.
BatteryStep apply_step(BatteryState state, const BatteryEnvelope& env, double balance);
BatteryStep apply_step(BatteryState state, const BatteryConfig& cfg, double balance);

[[nodiscard]] inline double state_of_charge(const BatteryState& state, const BatteryConfig& cfg) {
  return state.stored_energy / max_energy(cfg);
}

}  // namespace res5g
