#pragma once

namespace res5g {

/// PV array attached to one cell. Defaults describe a 20 W, 12 V module
/// wired 4 x 16.
struct PvArrayConfig {
  int count_serial = 4;
  int count_parallel = 16;
  double rated_power = 20.0;           // [W] per module
  double derating = 0.723;
  double temp_coeff = -0.005;          // [1/degC]
  double stc_irradiance = 1000.0;      // [W/m^2]
  double noct_irradiance = 800.0;      // [W/m^2]
  double stc_cell_temperature = 25.0;  // [degC]
  double noct_cell_temperature = 47.0; // [degC]
  double noct_ambient = 20.0;          // [degC]
  double transmittance = 0.9486832980505138;  // 0.3 * sqrt(10)
  double absorptance = 0.9486832980505138;    // 0.3 * sqrt(10)
  double module_length = 0.576;        // [m]
  double module_width = 0.357;         // [m]
  // Electrical ratings, kept for reference only.
  double nominal_voltage = 12.0;       // [V]
  double mpp_voltage = 17.2;           // [V]
  double mpp_current = 1.16;           // [A]
};

void validate(const PvArrayConfig& cfg);

[[nodiscard]] inline int module_count(const PvArrayConfig& cfg) {
  return cfg.count_serial * cfg.count_parallel;
}

/// Maximum-power-point efficiency under standard test conditions.
double mp_efficiency_stc(const PvArrayConfig& cfg);

/// Cell temperature [degC] from the ambient at the panel and the irradiance.
/// Throws DegenerateDenominator if the shared denominator is not positive.
double cell_temperature(double ambient, double irradiance, const PvArrayConfig& cfg);

/// Array output [W] at a known cell temperature; never negative.
double pv_power_at_cell_temperature(double irradiance, double cell_temp, const PvArrayConfig& cfg);

/// Array output [W] from irradiance and the ambient temperature at the panel.
double pv_power(double irradiance, double ambient, const PvArrayConfig& cfg);

}  // namespace res5g
