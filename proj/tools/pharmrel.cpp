// pharmrel: command-line front end for the supply chain reliability engine.
//
// Exit codes: 0 success, 2 validation error, 3 verification failure.

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <httplib.h>

#include "pharmrel/economics.hpp"
#include "pharmrel/format.hpp"
#include "pharmrel/http.hpp"
#include "pharmrel/io.hpp"
#include "pharmrel/reliability.hpp"
#include "pharmrel/scenario.hpp"
#include "pharmrel/service.hpp"
#include "pharmrel/simulation.hpp"
#include "pharmrel/verify.hpp"

namespace {

using namespace pharmrel;
using io::json;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitVerification = 3;

// Options shared by every subcommand that needs a configuration and rates.
struct ModelOptions {
  std::string config_file;
  std::optional<int> suppliers, plants, lines;
  std::optional<double> mtf_supplier, mtr_supplier, mtf_plant, mtr_plant, mtf_line, mtr_line;
  std::optional<double> disruption, recovery;

  void add_to(CLI::App& app)
  {
    app.add_option("--config", config_file, "Run configuration file (JSON)");
    app.add_option("--suppliers", suppliers, "Number of API suppliers (z_api)");
    app.add_option("--plants", plants, "Number of plants (z_p)");
    app.add_option("--lines", lines, "Lines per plant (z_l)");
    app.add_option("--mtf-supplier", mtf_supplier, "Supplier mean time to fail, years");
    app.add_option("--mtr-supplier", mtr_supplier, "Supplier mean time to recover, years");
    app.add_option("--mtf-plant", mtf_plant, "Plant mean time to fail, years");
    app.add_option("--mtr-plant", mtr_plant, "Plant mean time to recover, years");
    app.add_option("--mtf-line", mtf_line, "Line mean time to fail, years");
    app.add_option("--mtr-line", mtr_line, "Line mean time to recover, years");
    app.add_option("--disruption-multiplier", disruption, "Scale all disruption rates");
    app.add_option("--recovery-multiplier", recovery, "Scale all recovery rates");
  }

  // File first, then flags on top. Validates the result.
  io::RunConfig resolve() const
  {
    io::RunConfig rc;
    if (!config_file.empty()) {
      std::ifstream in(config_file);
      if (!in) throw Error(ErrorKind::InvalidParameter, "config", "cannot open " + config_file);
      std::stringstream ss;
      ss << in.rdbuf();
      rc = io::parse_run_config(io::parse_json_text(ss.str()));
    }
    if (suppliers) rc.config.z_api = *suppliers;
    if (plants) rc.config.z_p = *plants;
    if (lines) rc.config.z_l = *lines;
    if (mtf_supplier) rc.rates.supplier.mtf = *mtf_supplier;
    if (mtr_supplier) rc.rates.supplier.mtr = *mtr_supplier;
    if (mtf_plant) rc.rates.plant.mtf = *mtf_plant;
    if (mtr_plant) rc.rates.plant.mtr = *mtr_plant;
    if (mtf_line) rc.rates.line.mtf = *mtf_line;
    if (mtr_line) rc.rates.line.mtr = *mtr_line;
    if (disruption) rc.multipliers.disruption = *disruption;
    if (recovery) rc.multipliers.recovery = *recovery;
    rc.config.validate();
    rc.rates.validate();
    rc.multipliers.validate();
    rc.economics.validate();
    return rc;
  }
};

std::uint64_t default_seed()
{
  if (const char* env = std::getenv("PHARMREL_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw Error(ErrorKind::InvalidParameter, "PHARMREL_SEED", std::string("not an unsigned integer: ") + env);
    }
  }
  return SimulationSpec{}.seed;
}

void print_report(const Configuration& cfg, const RateMultipliers& m, const ReliabilityReport& r,
                  const std::string& fmt)
{
  if (fmt == "csv") {
    format::write_csv(std::cout, {SweepRow{cfg, m, r}});
    return;
  }
  if (fmt == "structured") {
    std::cout << json{{"z", io::to_json(cfg)},
                      {"multipliers", io::to_json(m)},
                      {"report", io::to_json(r)},
                      {"presentation", io::presentation(r)}}
                     .dump(2)
              << '\n';
    return;
  }
  std::cout << "configuration      " << cfg.label() << '\n'
            << "multipliers        disruption " << format::full(m.disruption) << ", recovery "
            << format::full(m.recovery) << '\n'
            << "expected shortage  " << format::percent(r.s, 1) << "  (" << format::full(r.s) << ")\n"
            << "reliability        " << format::full(r.r) << '\n'
            << "r_api              " << format::full(r.r_api) << '\n'
            << "r_pl               " << format::full(r.r_pl) << '\n'
            << "crit_api           " << format::full(r.crit_api) << '\n'
            << "crit_plant         " << format::full(r.crit_plant) << '\n'
            << "crit_line          " << format::full(r.crit_line) << '\n'
            << "mean uptime        " << format::years(r.mean_uptime) << " y  (" << format::full(r.mean_uptime)
            << ")\n"
            << "mean downtime      " << format::years(r.mean_downtime) << " y  (" << format::full(r.mean_downtime)
            << ")\n";
}

void print_rows(const std::vector<SweepRow>& rows, const std::string& fmt)
{
  if (fmt == "csv") {
    format::write_csv(std::cout, rows);
  } else if (fmt == "structured") {
    json out = json::array();
    for (const auto& r : rows) out.push_back(io::to_json(r));
    std::cout << out.dump(2) << '\n';
  } else {
    format::write_table(std::cout, rows);
  }
}

std::string option_label(const ProfitCurve& c, int option)
{
  return option == kNoProduce ? "no-produce" : c.configs[static_cast<std::size_t>(option)].label();
}

std::string money(double v)
{
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

}  // namespace

int main(int argc, char** argv)
{
  CLI::App app{"Reliability, shortage and pricing analysis of three-echelon drug supply chains"};
  app.require_subcommand(1);
  const std::vector<std::string> formats{"table", "csv", "structured"};

  // evaluate
  ModelOptions eval_opts;
  std::string eval_format = "table";
  auto* evaluate_cmd = app.add_subcommand("evaluate", "Closed-form metrics for one configuration");
  eval_opts.add_to(*evaluate_cmd);
  evaluate_cmd->add_option("--format", eval_format)->check(CLI::IsMember(formats));

  // sweep
  ModelOptions sweep_opts;
  std::string factorial, configs_text, dis_text, rec_text, sweep_format = "csv";
  auto* sweep_cmd = app.add_subcommand("sweep", "Configuration factorials and multiplier sweeps");
  sweep_opts.add_to(*sweep_cmd);
  sweep_cmd->add_option("--factorial", factorial, "Range for every echelon, e.g. 1..3");
  sweep_cmd->add_option("--configs", configs_text, "Comma-separated A-P-L list, e.g. 1-1-1,2-2-1");
  sweep_cmd->add_option("--disruption-multipliers", dis_text, "Comma-separated list, or 'default'");
  sweep_cmd->add_option("--recovery-multipliers", rec_text, "Comma-separated list, or 'default'");
  sweep_cmd->add_option("--format", sweep_format)->check(CLI::IsMember(formats));

  // economics
  ModelOptions econ_opts;
  double price_min = 0.0, price_max = 50.0, step = 0.25;
  bool breakeven = false;
  std::vector<std::string> threshold;
  std::string econ_configs, econ_format = "table";
  std::optional<double> price;
  auto* econ_cmd = app.add_subcommand("economics", "Profit, breakeven and threshold prices");
  econ_opts.add_to(*econ_cmd);
  econ_cmd->add_option("--price-min", price_min);
  econ_cmd->add_option("--price-max", price_max);
  econ_cmd->add_option("--step", step);
  econ_cmd->add_option("--price", price, "Unit price for the expected-profit report");
  econ_cmd->add_flag("--breakeven", breakeven, "Print breakeven prices only");
  econ_cmd->add_option("--threshold", threshold, "Two A-P-L configurations")->expected(2);
  econ_cmd->add_option("--configs", econ_configs, "Candidate configurations (default 1-1-1,2-1-1,1-2-1,2-2-1)");
  econ_cmd->add_option("--format", econ_format)->check(CLI::IsMember(formats));

  // simulate
  ModelOptions sim_opts;
  std::optional<double> horizon, warmup;
  std::optional<int> replications;
  std::optional<std::uint64_t> seed;
  unsigned workers = 0;
  std::string sim_format = "table";
  auto* sim_cmd = app.add_subcommand("simulate", "Event-driven simulation of one configuration");
  sim_opts.add_to(*sim_cmd);
  sim_cmd->add_option("--horizon", horizon, "Years per replication");
  sim_cmd->add_option("--warmup", warmup, "Years discarded at the start");
  sim_cmd->add_option("--replications", replications);
  sim_cmd->add_option("--seed", seed, "Overrides PHARMREL_SEED");
  sim_cmd->add_option("--workers", workers, "Threads (0 = all cores)");
  sim_cmd->add_option("--format", sim_format)->check(CLI::IsMember(formats));

  // verify
  ModelOptions verify_opts;
  bool do_enumerate = false, do_simulate = false;
  int max_components = 12;
  std::size_t rate_sets = 100;
  std::optional<double> v_horizon;
  std::optional<std::uint64_t> v_seed;
  std::optional<int> v_reps;
  unsigned v_workers = 0;
  auto* verify_cmd = app.add_subcommand("verify", "Check closed forms against the oracles");
  verify_opts.add_to(*verify_cmd);
  verify_cmd->add_flag("--enumerate", do_enumerate, "State enumeration oracle");
  verify_cmd->add_flag("--simulate", do_simulate, "Simulation oracle on the five case-study configurations");
  verify_cmd->add_option("--max-components", max_components);
  verify_cmd->add_option("--rate-sets", rate_sets);
  verify_cmd->add_option("--horizon", v_horizon);
  verify_cmd->add_option("--seed", v_seed);
  verify_cmd->add_option("--replications", v_reps);
  verify_cmd->add_option("--workers", v_workers);

  // serve
  int port = 8080;
  std::string host = "0.0.0.0", static_dir;
  std::size_t row_cap = 10'000;
  unsigned serve_workers = 0;
  auto* serve_cmd = app.add_subcommand("serve", "HTTP service");
  serve_cmd->add_option("--port", port);
  serve_cmd->add_option("--host", host);
  serve_cmd->add_option("--row-cap", row_cap, "Maximum rows per sweep request");
  serve_cmd->add_option("--workers", serve_workers, "Simulation threads per request (0 = all cores)");
  serve_cmd->add_option("--static-dir", static_dir, "Directory of dashboard assets served at /");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitValidation;
  }

  try {
    if (*evaluate_cmd) {
      const auto rc = eval_opts.resolve();
      print_report(rc.config, rc.multipliers, evaluate(rc.config, rc.rates, rc.multipliers), eval_format);
      return kExitOk;
    }

    if (*sweep_cmd) {
      const auto rc = sweep_opts.resolve();
      std::vector<Configuration> cfgs;
      if (!factorial.empty() && !configs_text.empty()) {
        throw Error(ErrorKind::Schema, "factorial", "use either --factorial or --configs, not both");
      }
      if (!factorial.empty()) {
        const CountRange range = io::parse_range(factorial);
        SweepSpec spec;
        spec.api = spec.plants = spec.lines = range;
        cfgs = spec.configurations();
      } else if (!configs_text.empty()) {
        cfgs = io::parse_config_list(configs_text);
      } else {
        cfgs = {rc.config};
      }
      std::vector<double> dis{rc.multipliers.disruption};
      std::vector<double> rec{rc.multipliers.recovery};
      if (!dis_text.empty()) dis = io::parse_number_list(dis_text, "disruption-multipliers", default_disruption_multipliers());
      if (!rec_text.empty()) rec = io::parse_number_list(rec_text, "recovery-multipliers", default_recovery_multipliers());
      std::vector<RateMultipliers> grid;
      for (double d : dis)
        for (double r : rec) grid.push_back({d, r});
      print_rows(combined_strategies(cfgs, grid, rc.rates), sweep_format);
      return kExitOk;
    }

    if (*econ_cmd) {
      auto rc = econ_opts.resolve();
      const EchelonRates rates = apply(rc.rates, rc.multipliers);
      if (price) rc.economics.q = *price;
      rc.economics.validate();
      if (!threshold.empty()) {
        const auto a = io::parse_config_label(threshold.at(0));
        const auto b = io::parse_config_label(threshold.at(1));
        const double t = threshold_price(a, b, rates, rc.economics);
        if (econ_format == "structured") {
          std::cout << json{{"a", a.label()}, {"b", b.label()}, {"threshold", t}}.dump(2) << '\n';
        } else {
          std::cout << a.label() << " vs " << b.label() << " threshold " << money(t) << "  (" << format::full(t)
                    << ")\n";
        }
        return kExitOk;
      }
      const std::vector<Configuration> cfgs =
          econ_configs.empty() ? default_profit_candidates() : io::parse_config_list(econ_configs);
      if (breakeven) {
        json out = json::array();
        for (const auto& c : cfgs) {
          const double q0 = breakeven_price(c, rates, rc.economics);
          if (econ_format == "structured") {
            out.push_back({{"config", c.label()}, {"breakeven", q0}});
          } else {
            std::cout << c.label() << " breakeven " << money(q0) << "  (" << format::full(q0) << ")\n";
          }
        }
        if (econ_format == "structured") std::cout << out.dump(2) << '\n';
        return kExitOk;
      }
      const ProfitCurve curve = profit_scan(cfgs, rates, rc.economics, price_min, price_max, step);
      if (econ_format == "structured") {
        std::cout << io::to_json(curve).dump(2) << '\n';
      } else if (econ_format == "csv") {
        std::cout << "price";
        for (const auto& c : curve.configs) std::cout << ",profit_" << c.label();
        std::cout << ",best\n";
        for (const auto& p : curve.points) {
          std::cout << format::full(p.price);
          for (double v : p.profit) std::cout << ',' << format::full(v);
          std::cout << ',' << option_label(curve, p.best) << '\n';
        }
      } else {
        std::cout << "price " << money(rc.economics.q) << ":\n";
        for (const auto& c : curve.configs) {
          const double p = expected_profit(c, rates, rc.economics);
          std::cout << "  " << c.label() << " expected profit " << money(p)
                    << (would_produce(p) ? "" : "  (would not produce)") << '\n';
        }
        std::cout << "breakeven prices:\n";
        for (std::size_t i = 0; i < curve.configs.size(); ++i) {
          std::cout << "  " << curve.configs[i].label() << "  " << money(curve.breakeven[i]) << '\n';
        }
        std::cout << "most profitable option switches (closed form):\n";
        for (const auto& s : curve.exact_switches) {
          std::cout << "  " << money(s.price) << "  " << option_label(curve, s.from) << " -> "
                    << option_label(curve, s.to) << '\n';
        }
        std::cout << "most profitable option switches (scan, step " << format::full(step) << "):\n";
        for (const auto& s : curve.scan_switches) {
          std::cout << "  " << money(s.price) << "  " << option_label(curve, s.from) << " -> "
                    << option_label(curve, s.to) << '\n';
        }
      }
      return kExitOk;
    }

    if (*sim_cmd) {
      auto rc = sim_opts.resolve();
      SimulationSpec spec = rc.simulation;
      spec.seed = seed ? *seed : (sim_opts.config_file.empty() ? default_seed() : spec.seed);
      if (horizon) spec.horizon = *horizon;
      if (warmup) spec.warmup = *warmup;
      if (replications) spec.replications = *replications;
      const EchelonRates rates = apply(rc.rates, rc.multipliers);
      const auto check = verify::check_simulation(rc.config, rates, spec, 3.0, workers);
      for (const auto& w : check.sim.warnings) std::cerr << "warning: " << w << '\n';
      if (sim_format == "structured") {
        std::cout << json{{"z", io::to_json(rc.config)},
                          {"simulation", io::to_json(spec)},
                          {"result", io::to_json(check.sim)},
                          {"closed_form", io::to_json(check.closed)}}
                         .dump(2)
                  << '\n';
      } else {
        const auto& s = check.sim;
        std::cout << "configuration " << rc.config.label() << ", horizon " << format::full(spec.horizon)
                  << " y x " << spec.replications << " replications, seed " << spec.seed << '\n';
        auto line = [](const char* name, const Estimate& e, double closed, bool ok) {
          std::cout << "  " << name << "  simulated " << format::full(e.mean) << " +/- " << format::full(e.std_error)
                    << "  closed form " << format::full(closed) << (ok ? "  [within 3 SE]" : "  [OUTSIDE 3 SE]")
                    << '\n';
        };
        line("availability ", s.availability, check.closed.r, check.r_ok);
        line("mean uptime  ", s.mean_uptime, check.closed.mean_uptime, check.uptime_ok);
        line("mean downtime", s.mean_downtime, check.closed.mean_downtime, check.downtime_ok);
        std::cout << "  shortage episodes " << s.shortage_episode_count << '\n';
      }
      return kExitOk;
    }

    if (*verify_cmd) {
      const auto rc = verify_opts.resolve();
      if (!do_enumerate && !do_simulate) do_enumerate = do_simulate = true;
      bool ok = true;
      if (do_enumerate) {
        const auto rep = verify::check_enumeration(max_components, rate_sets, v_seed.value_or(default_seed()));
        const bool pass = rep.passed(1e-12);
        ok = ok && pass;
        std::cout << (pass ? "PASS" : "FAIL") << " enumeration: " << rep.configurations << " configurations x "
                  << rep.rate_sets << " rate sets, " << rep.comparisons << " comparisons, max |dr| "
                  << rep.max_reliability_diff << ", max |dcrit| " << rep.max_criticality_diff
                  << (pass ? "" : ", worst " + rep.worst_case) << '\n';
      }
      if (do_simulate) {
        SimulationSpec spec = rc.simulation;
        spec.seed = v_seed ? *v_seed : default_seed();
        if (v_horizon) spec.horizon = *v_horizon;
        if (v_reps) spec.replications = *v_reps;
        const EchelonRates rates = apply(rc.rates, rc.multipliers);
        for (const auto& cfg : case_study_configurations()) {
          const auto check = verify::check_simulation(cfg, rates, spec, 3.0, v_workers);
          ok = ok && check.passed();
          std::cout << (check.passed() ? "PASS" : "FAIL") << " simulation " << cfg.label() << ": r "
                    << (check.r_ok ? "ok" : "out") << ", uptime " << (check.uptime_ok ? "ok" : "out")
                    << ", downtime " << (check.downtime_ok ? "ok" : "out") << ", regenerative "
                    << (check.regenerative_ok ? "ok" : "out") << '\n';
        }
      }
      return ok ? kExitOk : kExitVerification;
    }

    if (*serve_cmd) {
      httplib::Server server;
      service::Options opts;
      opts.row_cap = row_cap;
      opts.workers = serve_workers;
      service::install_routes(server, opts);
      if (!service::mount_static(server, static_dir)) {
        throw Error(ErrorKind::InvalidParameter, "static-dir", "not a directory: " + static_dir);
      }
      std::cerr << "listening on " << host << ':' << port << '\n';
      if (!server.listen(host, port)) {
        std::cerr << "error: cannot bind " << host << ':' << port << '\n';
        return 1;
      }
      return kExitOk;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  }
  return kExitOk;
}
