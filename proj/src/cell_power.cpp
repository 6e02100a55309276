#include "res5g/cell_power.hpp"

#include <cmath>
#include <string>

#include "res5g/error.hpp"
#include "res5g/units.hpp"

namespace res5g {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorKind::ValidationError, what);
}

// 3 B_w / (tau_c eta): watts per flop executed once per coherence block.
double per_flop_power(const CellRadioConfig& radio, const CellEnergyConfig& energy) {
  return 3.0 * radio.channel_bandwidth / (coherence_samples(radio) * energy.compute_efficiency);
}

double pilot_samples(const CellLoad& load, const CellRadioConfig& radio) {
  return static_cast<double>(radio.pilot_reuse) * load.served_users;
}

}  // namespace

CellRadioConfig band_800() {
  CellRadioConfig c;
  c.band = "800";
  c.frequency = 800.0;
  c.channel_bandwidth = 80e6;
  c.max_antenna_elements = 1;
  c.antenna_gain = 16.0;
  c.feeder_loss = 2.0;
  c.max_transmit_power = 46.0;
  c.noise_figure = 8.0;
  c.spatial_duty = 0.0;
  c.shadow_margin = 12.8;
  c.implementation_loss = 0.0;
  return c;
}

CellRadioConfig band_2100() {
  CellRadioConfig c;
  c.band = "2100";
  c.frequency = 2100.0;
  c.channel_bandwidth = 120e6;
  c.max_antenna_elements = 1;
  c.antenna_gain = 18.0;
  c.feeder_loss = 2.0;
  c.max_transmit_power = 49.0;
  c.noise_figure = 8.0;
  c.spatial_duty = 0.0;
  c.shadow_margin = 15.2;
  c.implementation_loss = 0.0;
  return c;
}

CellRadioConfig band_3500() { return CellRadioConfig{}; }

double coherence_samples(const CellRadioConfig& radio) {
  return radio.coherence_bandwidth * radio.coherence_time;
}

void validate(const CellRadioConfig& radio) {
  const std::string p = "band " + radio.band + ": ";
  require(radio.frequency > 0.0, p + "frequency must be > 0");
  require(radio.channel_bandwidth > 0.0, p + "channel_bandwidth must be > 0");
  require(radio.max_antenna_elements >= 1, p + "max_antenna_elements must be >= 1");
  require(radio.pilot_reuse >= 1, p + "pilot_reuse must be >= 1");
  require(coherence_samples(radio) > 0.0, p + "coherence block must hold samples");
  require(radio.duty_dl >= 0.0 && radio.duty_ul >= 0.0, p + "duty cycles must be >= 0");
  require(std::abs(radio.duty_dl + radio.duty_ul - 1.0) <= 1e-9, p + "duty_dl + duty_ul must equal 1");
  require(radio.spatial_duty >= 0.0 && radio.spatial_duty <= 1.0, p + "spatial_duty must be in [0, 1]");
  require(radio.used_subcarriers >= 1 && radio.used_subcarriers <= radio.total_subcarriers,
          p + "used_subcarriers must be in [1, total_subcarriers]");
  require(radio.sampling_factor > 0.0, p + "sampling_factor must be > 0");
}

void validate(const CellEnergyConfig& e) {
  require(e.amplifier_efficiency > 0.0 && e.amplifier_efficiency <= 1.0,
          "cell.amplifier_efficiency must be in (0, 1]");
  require(e.cooling_loss >= 0.0 && e.cooling_loss < 1.0, "cell.cooling_loss must be in [0, 1)");
  require(e.dc_loss >= 0.0 && e.dc_loss < 1.0, "cell.dc_loss must be in [0, 1)");
  require(e.fixed_power >= 0.0 && e.oscillator_power >= 0.0 && e.circuit_power >= 0.0 &&
              e.coding_power >= 0.0 && e.decoding_power >= 0.0 && e.backhaul_power >= 0.0 &&
              e.auxiliary_power >= 0.0,
          "cell powers must be >= 0");
  require(e.compute_efficiency > 0.0, "cell.compute_efficiency must be > 0");
  require(e.room_length > 0.0 && e.room_width > 0.0 && e.room_height > 0.0,
          "cell room dimensions must be > 0");
  require(e.room_heat_coeff >= 0.0, "cell.room_heat_coeff must be >= 0");
  require(e.circuit_heat_coeff >= 0.0, "cell.circuit_heat_coeff must be >= 0");
}

void validate(const CellLoad& load, const CellRadioConfig& radio) {
  require(load.served_users >= 0, "served_users must be >= 0");
  require(load.active_antennas >= 0 && load.active_antennas <= radio.max_antenna_elements,
          "active_antennas must be in [0, max_antenna_elements]");
  require(load.transmit_power >= 0.0, "transmit_power must be >= 0");
  require(load.transmit_power <= units::dbm_to_watts(radio.max_transmit_power) * (1.0 + 1e-12),
          "transmit_power exceeds the band maximum");
  require(load.traffic_dl >= 0.0 && load.traffic_ul >= 0.0, "traffic must be >= 0");
  if (pilot_samples(load, radio) > coherence_samples(radio)) {
    throw Error(ErrorKind::LoadExceedsCoherence,
                std::to_string(load.served_users) + " users need more pilots than the coherence block holds");
  }
}

double amplifier_power(const CellLoad& load, const CellEnergyConfig& energy) {
  return load.transmit_power / energy.amplifier_efficiency;
}

double channel_estimation_power(const CellLoad& load, const CellRadioConfig& radio,
                                const CellEnergyConfig& energy) {
  const double m = load.active_antennas;
  const double k = load.served_users;
  const double tau_p = pilot_samples(load, radio);
  return per_flop_power(radio, energy) * k * (m * tau_p + m * m);
}

double signal_processing_power(const CellLoad& load, const CellRadioConfig& radio,
                               const CellEnergyConfig& energy) {
  const double m = load.active_antennas;
  const double k = load.served_users;
  const double tau_p = pilot_samples(load, radio);
  const double payload = coherence_samples(radio) - tau_p;
  if (payload < 0.0) {
    throw Error(ErrorKind::LoadExceedsCoherence, "pilots exceed the coherence block");
  }
  const double tau_u = radio.duty_ul * payload;
  const double tau_d = radio.duty_dl * payload;

  // Per coherence block: data reception/transmission, MMSE combining
  // vectors, then precoding derived from the combiners.
  const double flops = m * k * (tau_u + tau_d)
                       + (3.0 * m * m + m) * k / 2.0 + m * m * m / 3.0 + 2.0 * m
                       + m * tau_p * (tau_p - k)
                       + m * k;
  return per_flop_power(radio, energy) * flops;
}

double coding_power(const CellLoad& load, const CellEnergyConfig& energy) {
  return energy.coding_power * load.traffic_dl + energy.decoding_power * load.traffic_ul;
}

double backhaul_power(const CellLoad& load, const CellEnergyConfig& energy) {
  return energy.backhaul_power * (load.traffic_ul + load.traffic_dl);
}

double transceiver_power(const CellLoad& load, const CellRadioConfig& radio,
                         const CellEnergyConfig& energy) {
  const double chains = load.active_antennas * energy.circuit_power + energy.oscillator_power;
  return energy.fixed_power + chains + channel_estimation_power(load, radio, energy) +
         coding_power(load, energy) + backhaul_power(load, energy) +
         signal_processing_power(load, radio, energy);
}

double room_surface_area(const CellEnergyConfig& e) {
  return 2.0 * e.room_length * e.room_width + 2.0 * e.room_length * e.room_height +
         2.0 * e.room_width * e.room_height;
}

double cooling_power(double circuit_power, double ambient, const CellEnergyConfig& energy) {
  const double heat = circuit_power * energy.circuit_heat_coeff;
  const double conductance = room_surface_area(energy) * energy.room_heat_coeff;  // [W/K]
  const double target = energy.room_target_temperature;
  const double gap = std::abs(target - ambient);

  if (target < ambient) return heat + conductance * gap;
  // Passive losses through the walls below the target: only the surplus
  // heat has to be removed, and nothing once the walls drain it all.
  if (target - heat / conductance < ambient) return heat - conductance * gap;
  return 0.0;
}

PowerBreakdown total_cell_power(const CellLoad& load, double ambient, const CellRadioConfig& radio,
                                const CellEnergyConfig& energy) {
  validate(load, radio);
  PowerBreakdown b;
  b.pa = amplifier_power(load, energy);
  b.fix = energy.fixed_power;
  b.tc = load.active_antennas * energy.circuit_power + energy.oscillator_power;
  b.ce = channel_estimation_power(load, radio, energy);
  b.cd = coding_power(load, energy);
  b.bh = backhaul_power(load, energy);
  b.sp = signal_processing_power(load, radio, energy);
  b.cp = b.fix + b.tc + b.ce + b.cd + b.bh + b.sp;
  b.cool = cooling_power(b.cp, ambient, energy);
  b.aux = energy.auxiliary_power;
  b.total = b.cp + b.pa + b.cool / (1.0 - energy.cooling_loss) + b.aux;
  return b;
}

}  // namespace res5g
