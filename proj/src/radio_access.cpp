#include "res5g/radio_access.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include <spdlog/spdlog.h>

#include "res5g/error.hpp"
#include "res5g/units.hpp"

namespace res5g {

namespace {

constexpr double kSpeedOfLight = 3.0e8;       // [m/s]
constexpr double kEffectiveEnvHeight = 1.0;   // [m]
constexpr double kThermalNoiseDensity = -174.0;  // [dBm/Hz]
constexpr double kCapacitySlack = 1e-12;

double uma_los(double d2d, double d3d, double h_bs, double h_ut, double f_ghz) {
  const double breakpoint =
      4.0 * (h_bs - kEffectiveEnvHeight) * (h_ut - kEffectiveEnvHeight) * f_ghz * 1e9 / kSpeedOfLight;
  if (d2d <= breakpoint) return 28.0 + 22.0 * std::log10(d3d) + 20.0 * std::log10(f_ghz);
  return 28.0 + 40.0 * std::log10(d3d) + 20.0 * std::log10(f_ghz) -
         9.0 * std::log10(breakpoint * breakpoint + (h_bs - h_ut) * (h_bs - h_ut));
}

double uma_nlos(double d2d, double h_bs, double h_ut, double f_ghz) {
  const double d3d = std::hypot(d2d, h_bs - h_ut);
  const double nlos = 13.54 + 39.08 * std::log10(d3d) + 20.0 * std::log10(f_ghz) - 0.6 * (h_ut - 1.5);
  return std::max(uma_los(d2d, d3d, h_bs, h_ut, f_ghz), nlos);
}

// Index of the fastest row whose threshold the SNR meets.
std::optional<std::size_t> best_mcs(const McsTable& table, double snr) {
  std::optional<std::size_t> best;
  for (std::size_t i = 0; i < table.size(); ++i) {
    if (table[i].snr <= snr) best = i;
  }
  return best;
}

double budget_gains(const CellRadioConfig& c) {
  return c.max_transmit_power + c.antenna_gain - c.feeder_loss - c.interference_margin -
         c.doppler_margin - c.fade_margin - c.shadow_margin - c.implementation_loss +
         c.soft_handover_gain;
}

}  // namespace

McsTable default_mcs_table() {
  return {
      {0.1523, -6.7}, {0.2344, -4.7}, {0.3770, -2.3}, {0.6016, 0.2},  {0.8770, 2.4},
      {1.1758, 4.3},  {1.4766, 5.9},  {1.9141, 8.1},  {2.4063, 10.3}, {2.7305, 11.7},
      {3.3223, 14.1}, {3.9023, 16.3}, {4.5234, 18.7}, {5.1152, 21.0}, {5.5547, 22.7},
  };
}

void validate(const McsTable& table) {
  if (table.empty()) throw Error(ErrorKind::ValidationError, "mcs_table must not be empty");
  for (std::size_t i = 0; i < table.size(); ++i) {
    if (!(table[i].spectral_efficiency > 0.0)) {
      throw Error(ErrorKind::ValidationError, "mcs_table[" + std::to_string(i) + "]: efficiency must be > 0");
    }
    if (i > 0 && !(table[i].spectral_efficiency > table[i - 1].spectral_efficiency &&
                   table[i].snr > table[i - 1].snr)) {
      throw Error(ErrorKind::ValidationError,
                  "mcs_table[" + std::to_string(i) + "]: rows must ascend in efficiency and SNR");
    }
  }
}

double free_space_path_loss(double distance, double frequency) {
  return 20.0 * std::log10(distance / 1000.0) + 20.0 * std::log10(frequency) + 32.44;
}

PathLoss uma_path_loss(double distance_2d, double bs_height, double ut_height, double frequency) {
  if (!(distance_2d >= 0.0)) throw Error(ErrorKind::InvalidGeometry, "distance must be >= 0");
  const double f_ghz = frequency / 1000.0;
  const double d2d = std::max(distance_2d, kUmaMinDistance);
  if (d2d <= kUmaMaxDistance) return {uma_nlos(d2d, bs_height, ut_height, f_ghz), false};

  const double at_bound = uma_nlos(kUmaMaxDistance, bs_height, ut_height, f_ghz);
  const double offset = at_bound - free_space_path_loss(kUmaMaxDistance, frequency);
  spdlog::debug("path loss at {:.0f} m is outside the urban-macro range; using free-space slope", d2d);
  return {free_space_path_loss(d2d, frequency) + offset, true};
}

PathLoss path_loss(const BaseStationSite& site, const CellRadioConfig& cell, const UserTerminal& user) {
  const double d2d = std::hypot(site.position.x - user.position.x, site.position.y - user.position.y);
  return uma_path_loss(d2d, site.antenna_height, user.antenna_height, cell.frequency);
}

double effective_bandwidth(const CellRadioConfig& cell) {
  return cell.sampling_factor * cell.channel_bandwidth *
         (static_cast<double>(cell.used_subcarriers) / cell.total_subcarriers);
}

double spatial_multiplexing(const CellRadioConfig& cell) {
  return cell.spatial_duty > 0.0 ? 1.0 / cell.spatial_duty : 1.0;
}

double receiver_sensitivity(const CellRadioConfig& cell, double bandwidth, double snr) {
  return kThermalNoiseDensity + 10.0 * std::log10(bandwidth) + cell.noise_figure + snr;
}

double link_budget_mapl(const CellRadioConfig& cell, double sensitivity) {
  return budget_gains(cell) - sensitivity;
}

McsEntry required_mcs(const CellRadioConfig& cell, double demand, const McsTable& table) {
  const double band = effective_bandwidth(cell);
  for (const auto& row : table) {
    if (row.spectral_efficiency * band >= demand * 1e6) return row;
  }
  throw Error(ErrorKind::DemandUnservable,
              std::to_string(demand) + " Mbit/s exceeds the top MCS rate of band " + cell.band);
}

double max_allowable_path_loss(const CellRadioConfig& cell, double demand, const McsTable& table) {
  const McsEntry row = required_mcs(cell, demand, table);
  return link_budget_mapl(cell, receiver_sensitivity(cell, effective_bandwidth(cell), row.snr));
}

double received_snr(const CellRadioConfig& cell, double transmit_power_dbm, double loss) {
  const double noise = receiver_sensitivity(cell, effective_bandwidth(cell), 0.0);
  return budget_gains(cell) - cell.max_transmit_power + transmit_power_dbm - loss - noise;
}

AssociationResult associate(const std::vector<UserTerminal>& users,
                            const std::vector<BaseStationSite>& sites, const McsTable& table) {
  AssociationResult out;
  std::vector<const CellRadioConfig*> radios;
  std::vector<const BaseStationSite*> owners;
  for (std::size_t s = 0; s < sites.size(); ++s) {
    for (std::size_t b = 0; b < sites[s].cells.size(); ++b) {
      out.cells.push_back({static_cast<int>(s), static_cast<int>(b), {}, std::nullopt, 0.0});
      radios.push_back(&sites[s].cells[b]);
      owners.push_back(&sites[s]);
    }
  }
  const std::size_t n_cells = radios.size();
  out.assignment.assign(users.size(), -1);
  std::vector<double> worst_margin(n_cells, std::numeric_limits<double>::infinity());
  std::vector<double> demand_sum(n_cells, 0.0);

  struct Candidate {
    std::size_t cell;
    double loss;
    double margin;   // SNR above the chosen MCS threshold at full power
    double airtime;
  };
  std::vector<Candidate> candidates;
  candidates.reserve(n_cells);

  for (std::size_t u = 0; u < users.size(); ++u) {
    const UserTerminal& user = users[u];
    candidates.clear();
    for (std::size_t c = 0; c < n_cells; ++c) {
      const CellRadioConfig& radio = *radios[c];
      double mapl = 0.0;
      try {
        mapl = max_allowable_path_loss(radio, user.demand, table);
      } catch (const Error&) {
        continue;  // this band cannot carry the demand at all
      }
      const double loss = path_loss(*owners[c], radio, user).loss;
      if (loss > mapl) continue;
      const double snr = received_snr(radio, radio.max_transmit_power, loss);
      const auto row = best_mcs(table, snr);
      if (!row) continue;
      const double rate = table[*row].spectral_efficiency * effective_bandwidth(radio);
      const double airtime = user.demand * 1e6 / rate / spatial_multiplexing(radio);
      candidates.push_back({c, loss, snr - table[*row].snr, airtime});
    }
    std::stable_sort(candidates.begin(), candidates.end(),
                     [](const Candidate& a, const Candidate& b) { return a.loss < b.loss; });
    for (const Candidate& cand : candidates) {
      CellAssociation& cell = out.cells[cand.cell];
      if (cell.utilisation + cand.airtime > 1.0 + kCapacitySlack) continue;
      cell.utilisation += cand.airtime;
      cell.load.served_users += 1;
      demand_sum[cand.cell] += user.demand;
      worst_margin[cand.cell] = std::min(worst_margin[cand.cell], cand.margin);
      out.assignment[u] = static_cast<int>(cand.cell);
      out.served += 1;
      break;
    }
  }

  for (std::size_t c = 0; c < n_cells; ++c) {
    CellAssociation& cell = out.cells[c];
    const CellRadioConfig& radio = *radios[c];
    if (cell.load.served_users == 0) continue;
    const double dbm = radio.max_transmit_power - std::max(worst_margin[c], 0.0);
    cell.transmit_power_dbm = std::min(dbm, radio.max_transmit_power);
    cell.load.transmit_power = units::dbm_to_watts(*cell.transmit_power_dbm);
    cell.load.traffic_dl = demand_sum[c] * radio.duty_dl / 1000.0;
    cell.load.traffic_ul = demand_sum[c] * radio.duty_ul / 1000.0;
    if (radio.activation == AntennaActivation::LoadProportional) {
      const double wanted = std::ceil(radio.max_antenna_elements * std::min(cell.utilisation, 1.0));
      cell.load.active_antennas = std::clamp(static_cast<int>(wanted), 1, radio.max_antenna_elements);
    } else {
      cell.load.active_antennas = radio.max_antenna_elements;
    }
  }
  return out;
}

}  // namespace res5g
