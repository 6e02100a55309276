#include "res5g/pv_harvest.hpp"

#include <algorithm>
#include <string>

#include "res5g/error.hpp"

namespace res5g {

void validate(const PvArrayConfig& cfg) {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw Error(ErrorKind::ValidationError, std::string("pv.") + what);
  };
  require(cfg.count_serial >= 1 && cfg.count_parallel >= 1, "counts must be >= 1");
  require(cfg.rated_power >= 0.0, "rated_power must be >= 0");
  require(cfg.derating > 0.0 && cfg.derating <= 1.0, "derating must be in (0, 1]");
  require(cfg.stc_irradiance > 0.0, "stc_irradiance must be > 0");
  require(cfg.noct_irradiance > 0.0, "noct_irradiance must be > 0");
  require(cfg.module_length > 0.0 && cfg.module_width > 0.0, "module dimensions must be > 0");
  require(cfg.transmittance > 0.0 && cfg.absorptance > 0.0,
          "transmittance and absorptance must be > 0");
}

double mp_efficiency_stc(const PvArrayConfig& cfg) {
  return cfg.rated_power / (cfg.module_length * cfg.module_width * cfg.stc_irradiance);
}

double cell_temperature(double ambient, double irradiance, const PvArrayConfig& cfg) {
  const double efficiency = mp_efficiency_stc(cfg);
  const double tau_alpha = cfg.transmittance * cfg.absorptance;
  const double noct_rise = (cfg.noct_cell_temperature - cfg.noct_ambient) *
                           (irradiance / cfg.noct_irradiance);
  const double denominator = 1.0 + noct_rise * (cfg.temp_coeff * efficiency / tau_alpha);
  if (!(denominator > 0.0)) {
    throw Error(ErrorKind::DegenerateDenominator,
                "cell temperature denominator " + std::to_string(denominator) + " is not positive");
  }
  const double heating =
      noct_rise * (1.0 - efficiency * (1.0 - cfg.temp_coeff * cfg.stc_cell_temperature) / tau_alpha);
  // The ambient term is scaled by the denominator too.
  return ambient / denominator + heating / denominator;
}

double pv_power_at_cell_temperature(double irradiance, double cell_temp, const PvArrayConfig& cfg) {
  const double nameplate = module_count(cfg) * cfg.rated_power * cfg.derating;
  const double p = nameplate * (irradiance / cfg.stc_irradiance) *
                   (1.0 + cfg.temp_coeff * (cell_temp - cfg.stc_cell_temperature));
  return std::max(p, 0.0);
}

double pv_power(double irradiance, double ambient, const PvArrayConfig& cfg) {
  if (irradiance < 0.0) throw Error(ErrorKind::UnitRange, "irradiance must be >= 0");
  if (irradiance == 0.0) return 0.0;
  return pv_power_at_cell_temperature(irradiance, cell_temperature(ambient, irradiance, cfg), cfg);
}

}  // namespace res5g
