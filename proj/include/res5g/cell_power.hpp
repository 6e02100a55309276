#pragma once

#include <string>

namespace res5g {

enum class AntennaActivation {
  AllOrNothing,     // every element on while the cell serves anyone
  LoadProportional, // elements scale with the cell's airtime utilisation
};

/// Radio parameters of one cell (one frequency band of a site).
struct CellRadioConfig {
  std::string band = "3500";
  double frequency = 3500.0;            // [MHz]
  double channel_bandwidth = 120e6;     // [Hz]
  int max_antenna_elements = 64;
  double antenna_gain = 24.0;           // [dBi]
  double feeder_loss = 3.0;             // [dB]
  double max_transmit_power = 53.0;     // [dBm]
  double noise_figure = 7.0;            // [dB]
  int pilot_reuse = 1;
  double coherence_time = 0.05;         // [s]
  double coherence_bandwidth = 1e6;     // [Hz]
  double duty_dl = 0.75;
  double duty_ul = 0.25;
  double spatial_duty = 0.25;
  int used_subcarriers = 320;
  int total_subcarriers = 512;
  double sampling_factor = 1.536;
  double interference_margin = 2.0;     // [dB]
  double doppler_margin = 3.0;          // [dB]
  double fade_margin = 10.0;            // [dB]
  double shadow_margin = 10.0;          // [dB]
  double implementation_loss = 3.0;     // [dB]
  double soft_handover_gain = 0.0;      // [dB]
  AntennaActivation activation = AntennaActivation::AllOrNothing;
};

CellRadioConfig band_800();
CellRadioConfig band_2100();
CellRadioConfig band_3500();

/// Samples per coherence block.
double coherence_samples(const CellRadioConfig& radio);

/// Consumption parameters shared by every cell.
struct CellEnergyConfig {
  double fixed_power = 10.0;          // [W]
  double oscillator_power = 0.2;      // [W]
  double circuit_power = 0.4;         // [W per active antenna]
  double coding_power = 0.1;          // [W per Gbit/s]
  double decoding_power = 0.8;        // [W per Gbit/s]
  double backhaul_power = 0.25;       // [W per Gbit/s]
  double auxiliary_power = 0.0;       // [W]
  double compute_efficiency = 75e9;   // [flop/W]
  double amplifier_efficiency = 0.35;
  double cooling_loss = 0.1;
  double circuit_heat_coeff = 0.9;
  double room_length = 7.0;           // [m]
  double room_width = 5.0;            // [m]
  double room_height = 3.5;           // [m]
  double room_target_temperature = 18.0;  // [degC]
  double room_heat_coeff = 2.037;     // [W/(m^2 K)]
  double dc_loss = 0.075;
};

/// Instantaneous load of one cell.
struct CellLoad {
  int served_users = 0;
  int active_antennas = 0;
  double transmit_power = 0.0;  // [W]
  double traffic_dl = 0.0;      // [Gbit/s]
  double traffic_ul = 0.0;      // [Gbit/s]
};

/// All terms in watts. `total` = cp + pa + cool / (1 - cooling_loss) + aux.
struct PowerBreakdown {
  double pa = 0.0;
  double cp = 0.0;
  double fix = 0.0;
  double tc = 0.0;
  double ce = 0.0;
  double cd = 0.0;
  double bh = 0.0;
  double sp = 0.0;
  double cool = 0.0;
  double aux = 0.0;
  double total = 0.0;
};

void validate(const CellRadioConfig& radio);
void validate(const CellEnergyConfig& energy);

/// Throws LoadExceedsCoherence when pilots overflow the coherence block and
/// ValidationError for any other breach of the load invariants.
void validate(const CellLoad& load, const CellRadioConfig& radio);

double amplifier_power(const CellLoad& load, const CellEnergyConfig& energy);

/// MMSE channel estimation.
double channel_estimation_power(const CellLoad& load, const CellRadioConfig& radio,
                                const CellEnergyConfig& energy);

/// Uplink reception, downlink transmission and precoder computation.
/// Payload samples split the non-pilot part of the block by the TDD duty cycles.
double signal_processing_power(const CellLoad& load, const CellRadioConfig& radio,
                               const CellEnergyConfig& energy);

double coding_power(const CellLoad& load, const CellEnergyConfig& energy);
double backhaul_power(const CellLoad& load, const CellEnergyConfig& energy);

/// Circuit power P_CP: fixed, transceiver chains plus one oscillator,
/// estimation, coding and backhaul, signal processing.
double transceiver_power(const CellLoad& load, const CellRadioConfig& radio,
                         const CellEnergyConfig& energy);

double room_surface_area(const CellEnergyConfig& energy);

/// Air-conditioning demand of the server room for the given circuit power
/// and outside temperature.
double cooling_power(double circuit_power, double ambient, const CellEnergyConfig& energy);

PowerBreakdown total_cell_power(const CellLoad& load, double ambient, const CellRadioConfig& radio,
                                const CellEnergyConfig& energy);

}  // namespace res5g
