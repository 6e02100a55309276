#pragma once

#include <optional>
#include <string>
#include <vector>

#include "res5g/cell_power.hpp"

namespace res5g {

struct Point {
  double x = 0.0;  // [m]
  double y = 0.0;  // [m]
};

struct UserTerminal {
  Point position;
  double antenna_height = 1.5;  // [m]
  double demand = 5.0;          // [Mbit/s], DL + UL
  double tx_power_max = 23.0;   // [dBm]
  double antenna_gain = 0.0;    // [dBi]
};

/// Heights are ground-relative. The server rooms and PV panels sit on the
/// roof, so the roof height also places them.
struct BaseStationSite {
  std::string name;
  Point position;
  double building_altitude = 34.0;  // [m]
  double antenna_height = 39.0;     // [m]
  double pv_altitude = 34.0;        // [m]
  double turbine_altitude = 42.0;   // [m]
  std::vector<CellRadioConfig> cells;
};

/// One modulation-and-coding row: spectral efficiency [bit/s/Hz] reachable
/// at or above the SNR threshold [dB].
struct McsEntry {
  double spectral_efficiency = 0.0;
  double snr = 0.0;
};
using McsTable = std::vector<McsEntry>;

/// CQI-style table, ascending in both columns.
McsTable default_mcs_table();
void validate(const McsTable& table);

inline constexpr double kUmaMinDistance = 10.0;    // [m]
inline constexpr double kUmaMaxDistance = 5000.0;  // [m]

struct PathLoss {
  double loss = 0.0;  // [dB]
  bool fallback = false;
};

/// Free-space loss with the distance in metres and the frequency in MHz.
double free_space_path_loss(double distance, double frequency);

/// Urban-macro NLOS loss (max of LOS and NLOS branches). Distances below the
/// model's lower bound are evaluated at the bound; beyond the upper bound the
/// free-space slope continues from the value at the bound.
PathLoss uma_path_loss(double distance_2d, double bs_height, double ut_height, double frequency);

PathLoss path_loss(const BaseStationSite& site, const CellRadioConfig& cell, const UserTerminal& user);

/// Occupied bandwidth [Hz] after subcarrier and sampling corrections.
double effective_bandwidth(const CellRadioConfig& cell);

/// Aggregate-capacity multiplier from spatial multiplexing (1 / spatial duty).
double spatial_multiplexing(const CellRadioConfig& cell);

/// Thermal noise floor plus noise figure plus required SNR [dBm].
double receiver_sensitivity(const CellRadioConfig& cell, double bandwidth, double snr);

/// Downlink budget at full power minus the receiver sensitivity [dB].
double link_budget_mapl(const CellRadioConfig& cell, double sensitivity);

/// Lowest MCS row able to carry `demand` [Mbit/s] on the whole band.
/// Throws DemandUnservable when even the top row is too slow.
McsEntry required_mcs(const CellRadioConfig& cell, double demand, const McsTable& table);

double max_allowable_path_loss(const CellRadioConfig& cell, double demand, const McsTable& table);

/// SNR [dB] over the effective band for a given transmit power and loss.
double received_snr(const CellRadioConfig& cell, double transmit_power_dbm, double loss);

struct CellAssociation {
  int site = 0;
  int band = 0;
  CellLoad load;
  std::optional<double> transmit_power_dbm;  // empty for an idle cell
  double utilisation = 0.0;                  // airtime fraction in [0, 1]
};

struct AssociationResult {
  std::vector<CellAssociation> cells;  // site-major, band-minor
  std::vector<int> assignment;         // cell index per user, -1 if unserved
  int served = 0;
};

/// Greedy stand-in for the optimal planner: users in input order take the
/// admissible cell with the least path loss that still has airtime, then each
/// cell lowers its power to the smallest value that keeps every served user
/// at its modulation.
AssociationResult associate(const std::vector<UserTerminal>& users,
                            const std::vector<BaseStationSite>& sites, const McsTable& table);

}  // namespace res5g
