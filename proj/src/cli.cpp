#include "res5g/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <set>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <nlohmann/json.hpp>
#include <openssl/evp.h>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "res5g/error.hpp"
#include "res5g/units.hpp"

#ifndef RES5G_VERSION
#define RES5G_VERSION "0.0.0"
#endif

namespace res5g {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

namespace {

struct Options {
  std::string scenario;
  std::vector<std::string> weather;
  std::vector<std::string> modes;
  std::vector<std::uint64_t> seeds;
  int runs = 0;
  std::string out = ".";
  std::string format = "text";
};

struct Inputs {
  ScenarioConfig cfg;
  WeatherTrace weather;
  std::vector<ResMode> modes;
  std::string raw;  // bytes the digest covers
};

std::string file_tag(ResMode mode) {
  std::string s(to_string(mode));
  std::replace(s.begin(), s.end(), '+', '_');
  return s;
}

std::string fixed(const std::optional<double>& v, int precision) {
  return v ? fmt::format("{:.{}f}", *v, precision) : "n/a";
}

ordered_json metrics_json(const PeriodMetrics& m) {
  auto opt = [](const std::optional<double>& v) { return v ? ordered_json(*v) : ordered_json(nullptr); };
  return {{"label", m.label},       {"harvest_kwh", m.harvest_kwh}, {"pv_kwh", m.pv_kwh},
          {"wt_kwh", m.wt_kwh},     {"peak_kw", m.peak_kw},         {"demand_kwh", m.demand_kwh},
          {"grid_kwh", m.grid_kwh}, {"lifetime_h", m.lifetime_h},   {"aebl_pct", opt(m.aebl)},
          {"arec_pct", opt(m.arec)}};
}

std::string header_line(const Provenance& prov) {
  return fmt::format("# res5g {} input-sha256 {}\n", prov.version, prov.input_digest);
}

void configure_logging() {
  auto logger = spdlog::stderr_color_mt("res5g");
  spdlog::set_default_logger(logger);
  spdlog::set_level(spdlog::level::warn);
  if (const char* env = std::getenv("RES5G_LOG")) spdlog::set_level(spdlog::level::from_str(env));
}

Inputs load_inputs(const Options& opt, bool need_weather) {
  Inputs in;
  const std::string scenario_text = read_text_file(opt.scenario);
  in.cfg = parse_scenario(scenario_text, opt.scenario);
  if (!opt.seeds.empty()) in.cfg.seed = opt.seeds.front();
  if (opt.runs > 0) in.cfg.runs = opt.runs;
  if (!opt.modes.empty()) {
    in.cfg.modes.clear();
    for (const auto& name : opt.modes) {
      const auto mode = parse_mode(name);
      if (!mode) throw Error(ErrorKind::ValidationError, "--mode: unknown mode '" + name + "'");
      if (std::find(in.cfg.modes.begin(), in.cfg.modes.end(), *mode) == in.cfg.modes.end()) {
        in.cfg.modes.push_back(*mode);
      }
    }
    validate(in.cfg);
  }
  in.modes = in.cfg.modes;
  in.raw = scenario_text;

  if (need_weather && opt.weather.empty()) throw Error(ErrorKind::ValidationError, "--weather is required");
  std::vector<fs::path> paths(opt.weather.begin(), opt.weather.end());
  if (!paths.empty()) {
    in.weather = load_weather(paths, in.cfg.window);
    for (const auto& p : paths) in.raw += read_text_file(p);
  }
  return in;
}

Provenance provenance(const Inputs& in, const std::vector<std::uint64_t>& seeds) {
  std::string params = "\nmodes=";
  for (ResMode m : in.modes) params += std::string(to_string(m)) + ",";
  params += ";runs=" + std::to_string(in.cfg.runs) + ";seeds=";
  if (seeds.empty()) {
    params += std::to_string(in.cfg.seed);
  } else {
    for (auto s : seeds) params += std::to_string(s) + ",";
  }
  return {std::string(tool_version()), sha256_hex(in.raw + params)};
}

// The baseline is always simulated because every metric is relative to it.
RunSummary run_modes(const ScenarioConfig& cfg, const WeatherTrace& weather, const std::vector<ResMode>& modes,
                     std::map<ResMode, std::vector<RunLedger>>* keep) {
  std::map<ResMode, std::vector<RunLedger>> ledgers;
  std::set<ResMode> wanted(modes.begin(), modes.end());
  wanted.insert(ResMode::None);
  for (ResMode m : wanted) {
    spdlog::info("simulating mode {} over {} runs", to_string(m), cfg.runs);
    ledgers[m] = simulate_runs(cfg, weather, m);
  }
  RunSummary summary = compute_metrics(ledgers, cfg.window, 1.0 - cfg.battery.max_dod);
  std::erase_if(summary.modes, [&](const ModeSummary& ms) {
    return std::find(modes.begin(), modes.end(), ms.mode) == modes.end();
  });
  if (keep) *keep = std::move(ledgers);
  return summary;
}

void write_file(const fs::path& path, const std::string& content, std::ostream& out) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  f << content;
  if (!f) throw std::runtime_error("write failed for " + path.string());
  out << "wrote " << path.string() << "\n";
}

fs::path prepare_out(const std::string& dir) {
  fs::path p(dir);
  fs::create_directories(p);
  return p;
}

RunSummary only(const RunSummary& s, ResMode mode) {
  RunSummary r = s;
  std::erase_if(r.modes, [&](const ModeSummary& ms) { return ms.mode != mode; });
  return r;
}

int cmd_validate(const Options& opt, std::ostream& out) {
  const Inputs in = load_inputs(opt, false);
  std::size_t cells = 0;
  for (const auto& s : in.cfg.sites) cells += s.cells.size();
  out << fmt::format("scenario {}: ok (schema {}, {} sites, {} cells, {} users, {} steps, modes", in.cfg.name,
                     in.cfg.schema_version, in.cfg.sites.size(), cells, in.cfg.users.count,
                     in.cfg.window.step_count);
  for (ResMode m : in.modes) out << " " << to_string(m);
  out << ")\n";
  if (!opt.weather.empty()) out << fmt::format("weather: ok ({} steps)\n", in.weather.samples.size());
  return 0;
}

int cmd_simulate(const Options& opt, std::ostream& out) {
  const Inputs in = load_inputs(opt, true);
  const Provenance prov = provenance(in, {});
  const fs::path dir = prepare_out(opt.out);
  std::map<ResMode, std::vector<RunLedger>> ledgers;
  const RunSummary summary = run_modes(in.cfg, in.weather, in.modes, &ledgers);
  for (ResMode m : in.modes) {
    write_file(dir / ("ledger_" + file_tag(m) + ".tsv"), format_ledger(ledgers.at(m), prov), out);
    const RunSummary one = only(summary, m);
    if (opt.format == "json") {
      write_file(dir / ("summary_" + file_tag(m) + ".json"), format_summary_json(one, prov), out);
    } else {
      write_file(dir / ("summary_" + file_tag(m) + ".txt"), format_report_text(one, prov), out);
    }
  }
  return 0;
}

int cmd_report(const Options& opt, std::ostream& out) {
  const Inputs in = load_inputs(opt, true);
  const Provenance prov = provenance(in, {});
  const fs::path dir = prepare_out(opt.out);
  const RunSummary summary = run_modes(in.cfg, in.weather, in.modes, nullptr);
  if (opt.format == "json") {
    write_file(dir / "report.json", format_summary_json(summary, prov), out);
  } else {
    write_file(dir / "report.txt", format_report_text(summary, prov), out);
  }
  write_file(dir / "soc_trace.tsv", format_soc_trace(summary, in.cfg.window, prov), out);
  return 0;
}

int cmd_sweep(const Options& opt, std::ostream& out) {
  Inputs in = load_inputs(opt, true);
  std::vector<std::uint64_t> seeds = opt.seeds;
  if (seeds.empty()) seeds.push_back(in.cfg.seed);
  const Provenance prov = provenance(in, seeds);
  const fs::path dir = prepare_out(opt.out);

  std::string table = header_line(prov);
  table += "seed\tmode\tperiod\tharvest_kwh\tpv_kwh\twt_kwh\tpeak_kw\tdemand_kwh\tgrid_kwh\tlifetime_h\taebl_pct\tarec_pct\n";
  ordered_json doc = {{"tool", {{"version", prov.version}, {"input_sha256", prov.input_digest}}},
                      {"sweep", ordered_json::array()}};
  for (std::uint64_t seed : seeds) {
    in.cfg.seed = seed;
    const RunSummary summary = run_modes(in.cfg, in.weather, in.modes, nullptr);
    for (const ModeSummary& ms : summary.modes) {
      std::vector<const PeriodMetrics*> rows;
      for (const auto& d : ms.days) rows.push_back(&d);
      rows.push_back(&ms.window);
      for (const PeriodMetrics* m : rows) {
        table += fmt::format("{}\t{}\t{}\t{:.6f}\t{:.6f}\t{:.6f}\t{:.6f}\t{:.6f}\t{:.6f}\t{:.3f}\t{}\t{}\n", seed,
                             to_string(ms.mode), m->label, m->harvest_kwh, m->pv_kwh, m->wt_kwh, m->peak_kw,
                             m->demand_kwh, m->grid_kwh, m->lifetime_h, fixed(m->aebl, 6), fixed(m->arec, 6));
        ordered_json row = metrics_json(*m);
        row["seed"] = seed;
        row["mode"] = std::string(to_string(ms.mode));
        doc["sweep"].push_back(row);
      }
    }
  }
  if (opt.format == "json") {
    write_file(dir / "sweep.json", doc.dump(2) + "\n", out);
  } else {
    write_file(dir / "sweep.tsv", table, out);
  }
  return 0;
}

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ParseError:
    case ErrorKind::ValidationError:
    case ErrorKind::MissingStep:
    case ErrorKind::NonMonotoneTimestamps:
    case ErrorKind::UnitRange:
    case ErrorKind::Io:
      return 2;
    default:
      return 3;
  }
}

}  // namespace

std::string_view tool_version() { return RES5G_VERSION; }

std::string sha256_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("sha256 failed");
  }
  std::string hex;
  for (unsigned int i = 0; i < len; ++i) hex += fmt::format("{:02x}", digest[i]);
  return hex;
}

std::string format_ledger(const std::vector<RunLedger>& runs, const Provenance& prov) {
  std::string s = header_line(prov);
  s += "run\tseed\tmode\tstep\tsite\tband\tusers\tambient_c\tp_tx_w\tp_pa_w\tp_cp_w\tp_cool_w\tp_mimo_w\t"
       "p_pv_w\tp_wt_w\tbalance_wh\tbattery_delta_wh\tgrid_wh\tspilled_wh\tsoc\n";
  for (const RunLedger& r : runs) {
    for (long step = 0; step < r.step_count; ++step) {
      for (std::size_t c = 0; c < r.cells.size(); ++c) {
        const CellStep& e = r.at(step, c);
        const CellInfo& info = r.cells[c];
        const double p_tx = info.served_users > 0 ? units::dbm_to_watts(info.transmit_power_dbm) : 0.0;
        s += fmt::format(
            "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{:.4f}\t{:.6f}\t{:.6f}\t{:.6f}\t{:.6f}\t{:.6f}\t{:.6f}\t{:.6f}\t{:.6f}\t"
            "{:.6f}\t{:.6f}\t{:.6f}\t{:.9f}\n",
            r.run, r.seed, to_string(r.mode), r.start_step + step, info.site, info.band, info.served_users,
            e.ambient, p_tx, e.power.pa, e.power.cp, e.power.cool, e.power.total, e.p_pv, e.p_wt, e.balance,
            e.battery_delta, e.grid, e.spilled, e.soc);
      }
    }
  }
  return s;
}

std::string format_report_text(const RunSummary& summary, const Provenance& prov) {
  std::string s = header_line(prov);
  s += fmt::format("# runs {}, cells {}; energies and peaks per cell\n", summary.runs, summary.cells);
  s += fmt::format("{:<7} {:<16} {:>11} {:>9} {:>9} {:>8} {:>11} {:>9} {:>10} {:>9} {:>8}\n", "mode", "period",
                   "harvest_kWh", "pv_kWh", "wt_kWh", "peak_kW", "demand_kWh", "grid_kWh", "lifetime_h", "AEBL_%",
                   "AREC_%");
  for (const ModeSummary& ms : summary.modes) {
    std::vector<const PeriodMetrics*> rows;
    for (const auto& d : ms.days) rows.push_back(&d);
    rows.push_back(&ms.window);
    for (const PeriodMetrics* m : rows) {
      s += fmt::format("{:<7} {:<16} {:>11.3f} {:>9.3f} {:>9.3f} {:>8.3f} {:>11.3f} {:>9.3f} {:>10.2f} {:>9} {:>8}\n",
                       to_string(ms.mode), m->label, m->harvest_kwh, m->pv_kwh, m->wt_kwh, m->peak_kw,
                       m->demand_kwh, m->grid_kwh, m->lifetime_h, fixed(m->aebl, 2), fixed(m->arec, 2));
    }
  }
  return s;
}

std::string format_summary_json(const RunSummary& summary, const Provenance& prov) {
  ordered_json doc;
  doc["tool"] = {{"version", prov.version}, {"input_sha256", prov.input_digest}};
  doc["runs"] = summary.runs;
  doc["cells"] = summary.cells;
  doc["modes"] = ordered_json::object();
  for (const ModeSummary& ms : summary.modes) {
    ordered_json m;
    m["days"] = ordered_json::array();
    for (const auto& d : ms.days) m["days"].push_back(metrics_json(d));
    m["window"] = metrics_json(ms.window);
    m["soc_trace"] = ms.soc_trace;
    doc["modes"][std::string(to_string(ms.mode))] = m;
  }
  return doc.dump(2) + "\n";
}

std::string format_soc_trace(const RunSummary& summary, const SimulationWindow& window, const Provenance& prov) {
  std::string s = header_line(prov);
  s += "step";
  for (const ModeSummary& ms : summary.modes) s += fmt::format("\t{}", to_string(ms.mode));
  s += "\n";
  for (long step = 0; step < window.step_count; ++step) {
    s += std::to_string(window.start_step + step);
    for (const ModeSummary& ms : summary.modes) {
      s += fmt::format("\t{:.6f}", ms.soc_trace[static_cast<std::size_t>(step)]);
    }
    s += "\n";
  }
  return s;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  if (!spdlog::get("res5g")) configure_logging();

  CLI::App app{"Renewable-powered 5G base station energy simulator", "res5g"};
  app.set_version_flag("--version", std::string(tool_version()));
  app.require_subcommand(1);
  Options opt;

  auto common = [&](CLI::App* sub, bool weather_required) {
    sub->add_option("--scenario", opt.scenario, "scenario document (JSON)")->required();
    auto* w = sub->add_option("--weather", opt.weather, "weather table; repeat to concatenate");
    if (weather_required) w->required();
    sub->add_option("--mode", opt.modes, "none | pv | wt | pv+wt; repeatable");
    sub->add_option("--runs", opt.runs, "independent user draws")->check(CLI::PositiveNumber);
    sub->add_option("--out", opt.out, "output directory");
    sub->add_option("--format", opt.format, "text or json")->check(CLI::IsMember({"text", "json"}));
  };

  auto* validate_cmd = app.add_subcommand("validate", "check a scenario and optional weather");
  common(validate_cmd, false);
  auto* simulate_cmd = app.add_subcommand("simulate", "per-step ledgers and per-mode summaries");
  common(simulate_cmd, true);
  simulate_cmd->add_option("--seed", opt.seeds, "scenario seed override")->expected(1);
  auto* report_cmd = app.add_subcommand("report", "modes x days comparison and mean SoC trace");
  common(report_cmd, true);
  report_cmd->add_option("--seed", opt.seeds, "scenario seed override")->expected(1);
  auto* sweep_cmd = app.add_subcommand("sweep", "metrics over every listed mode and seed");
  common(sweep_cmd, true);
  sweep_cmd->add_option("--seed", opt.seeds, "seed; repeatable");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 1;
  }

  try {
    if (validate_cmd->parsed()) return cmd_validate(opt, out);
    if (simulate_cmd->parsed()) return cmd_simulate(opt, out);
    if (report_cmd->parsed()) return cmd_report(opt, out);
    return cmd_sweep(opt, out);
  } catch (const Error& e) {
    err << "res5g: " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    err << "res5g: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace res5g
