#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "res5g/sim_engine.hpp"

namespace res5g {

std::string_view tool_version();

/// Stamped into every output file.
struct Provenance {
  std::string version;
  std::string input_digest;  // hex SHA-256
};

std::string sha256_hex(std::string_view data);

/// One row per (run, step, cell), tab separated.
std::string format_ledger(const std::vector<RunLedger>& runs, const Provenance& prov);

/// Modes x days comparison table plus the window aggregate.
std::string format_report_text(const RunSummary& summary, const Provenance& prov);
std::string format_summary_json(const RunSummary& summary, const Provenance& prov);

/// Mean state of charge per step, one column per mode.
std::string format_soc_trace(const RunSummary& summary, const SimulationWindow& window, const Provenance& prov);

/// Exit status: 0 success, 1 usage, 2 invalid input, 3 runtime failure.
/// `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace res5g
