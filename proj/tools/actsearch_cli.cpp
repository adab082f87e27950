// actsearch: run DGFi / Chernoff active-search experiments from a JSON config.
//
//   actsearch simulate --config cfg.json [--policy dgfi] [--trials N] [--seed N]
//   actsearch compare --config cfg.json
//   actsearch rates --config cfg.json [--format json|csv] [--policy chernoff]
//   actsearch check-optimality --config cfg.json
//   actsearch oracle --config cfg.json [--horizon N]
//   actsearch sweep --config cfg.json
//
// Exit codes: 0 success, 1 runtime failure, 2 invalid config,
// 3 truncation rate above --max-truncation.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "actsearch/config.hpp"
#include "actsearch/errors.hpp"
#include "actsearch/harness.hpp"
#include "actsearch/rates.hpp"
#include "actsearch/report_io.hpp"

namespace {

using namespace actsearch;

constexpr int kExitRuntime = 1;
constexpr int kExitConfig = 2;
constexpr int kExitTruncation = 3;

struct Options {
  std::string config;
  std::string policy;
  std::optional<std::size_t> trials;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> max_horizon;
  std::string out;
  std::string format = "csv";
  std::string trace_out = "trace.csv";
  unsigned workers = 1;
  bool trace = false;
  double max_truncation = 1e-4;
  std::size_t horizon = 100000;
  std::vector<std::size_t> kappas{1, 2, 3};
};

void add_common(CLI::App* cmd, Options& o) {
  cmd->add_option("--config", o.config, "Experiment config (JSON)")->required();
  cmd->add_option("--out", o.out, "Write output here instead of stdout");
}

void add_run_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--policy", o.policy, "dgfi or chernoff (overrides the config)");
  cmd->add_option("--trials", o.trials, "Number of trials");
  cmd->add_option("--seed", o.seed, "Base seed");
  cmd->add_option("--workers", o.workers, "Worker threads (results do not depend on this)");
  cmd->add_option("--max-horizon", o.max_horizon, "Truncate trials after this many steps");
  cmd->add_option("--max-truncation", o.max_truncation, "Exit with code 3 above this truncation rate");
}

ExperimentConfig load(const Options& o) {
  ExperimentConfig cfg = load_config(o.config);
  if (!o.policy.empty()) cfg.policy = parse_policy(o.policy);
  if (o.trials) {
    if (*o.trials == 0) throw ConfigError("--trials must be at least 1");
    cfg.trials = *o.trials;
  }
  if (o.seed) cfg.seed = *o.seed;
  if (o.max_horizon) cfg.max_horizon = o.max_horizon;
  if (o.trace) cfg.trace = true;
  return cfg;
}

RunOptions run_options(const ExperimentConfig& cfg, const Options& o) {
  return {cfg.max_horizon, o.workers, cfg.trace};
}

void emit(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(o.out, std::ios::binary);
  if (!f) throw Error("cannot write " + o.out);
  f << text;
}

int truncation_status(const std::vector<const ExperimentReport*>& reports, const Options& o) {
  for (const auto* r : reports) {
    if (r->truncation_rate > o.max_truncation) {
      std::cerr << "truncation rate " << r->truncation_rate << " exceeds " << o.max_truncation << " (" << to_string(r->policy)
                << ", M=" << r->M << ")\n";
      return kExitTruncation;
    }
  }
  return 0;
}

int cmd_simulate(const Options& o) {
  const ExperimentConfig cfg = load(o);
  const Experiment exp(cfg.instance, cfg.policy);
  const ExperimentReport r = exp.run(cfg.trials, cfg.seed, run_options(cfg, o));
  if (o.format == "json") {
    emit(o, report_to_json(r, cfg.hash).dump(2) + "\n");
  } else {
    emit(o, report_csv_header() + "\n" + report_csv_row(r, cfg.hash) + "\n");
  }
  if (cfg.trace) {
    std::ofstream f(o.trace_out, std::ios::binary);
    write_trace_csv(f, r);
  }
  return truncation_status({&r}, o);
}

int cmd_compare(const Options& o) {
  const ExperimentConfig cfg = load(o);
  const RunOptions ro = run_options(cfg, o);
  const ExperimentReport dgfi = Experiment(cfg.instance, PolicyKind::Dgfi).run(cfg.trials, cfg.seed, ro);
  const ExperimentReport chernoff = Experiment(cfg.instance, PolicyKind::Chernoff).run(cfg.trials, cfg.seed, ro);
  if (o.format == "json") {
    nlohmann::json j = nlohmann::json::array({report_to_json(dgfi, cfg.hash), report_to_json(chernoff, cfg.hash)});
    emit(o, j.dump(2) + "\n");
  } else {
    emit(o, report_csv_header() + "\n" + report_csv_row(dgfi, cfg.hash) + "\n" + report_csv_row(chernoff, cfg.hash) + "\n");
  }
  return truncation_status({&dgfi, &chernoff}, o);
}

int cmd_rates(const Options& o, bool with_chernoff) {
  const ExperimentConfig cfg = load(o);
  const RateReport report = analyze_rates(cfg.instance);
  if (o.format == "csv") {
    std::ostringstream os;
    write_rate_csv(os, report, cfg.instance.divergences());
    emit(o, os.str());
    return 0;
  }
  nlohmann::json j = rate_report_to_json(report, cfg.instance.divergences());
  if (with_chernoff) j["chernoff"] = chernoff_to_json(ChernoffPolicy(cfg.instance), cfg.instance.priors());
  emit(o, j.dump(2) + "\n");
  return 0;
}

int cmd_check_optimality(const Options& o) {
  const ExperimentConfig cfg = load(o);
  const auto& div = cfg.instance.divergences();
  const auto verdicts = optimality_check(div, cfg.instance.K());
  nlohmann::json cells = nlohmann::json::array();
  bool all = true;
  for (std::size_t m = 0; m < verdicts.size(); ++m) {
    const auto& v = verdicts[m];
    all = all && v.optimal();
    cells.push_back({{"cell", m},
                     {"k_tilde", std::stod(format_number(k_tilde(div, m)))},
                     {"cond_a", v.target_dominates},
                     {"cond_b", v.below_switch},
                     {"cond_c", v.past_switch},
                     {"optimal", v.optimal()}});
  }
  nlohmann::json j{{"M", cfg.instance.M()},
                   {"K", cfg.instance.K()},
                   {"optimal", all},
                   {"cells", cells},
                   {"pathological_k", pathological_k(div)}};
  emit(o, j.dump(2) + "\n");
  return 0;
}

int cmd_oracle(const Options& o) {
  const ExperimentConfig cfg = load(o);
  const auto& div = cfg.instance.divergences();
  std::ostringstream os;
  os << "cell,kappa,car_oracle,f_kappa,rel_err\n";
  for (std::size_t m = 0; m < div.size(); ++m) {
    std::vector<double> speeds;
    for (std::size_t j = 0; j < div.size(); ++j)
      if (j != m) speeds.push_back(div.fg[j]);
    for (std::size_t kappa : o.kappas) {
      if (kappa == 0 || kappa > speeds.size()) continue;
      const double sim = car_oracle(speeds, kappa, o.horizon);
      const double exact = f_kappa(div, m, static_cast<double>(kappa));
      os << m << ',' << kappa << ',' << format_number(sim) << ',' << format_number(exact) << ','
         << format_number(std::abs(sim - exact) / exact) << '\n';
    }
  }
  emit(o, os.str());
  return 0;
}

int cmd_sweep(const Options& o) {
  const ExperimentConfig cfg = load(o);
  if (!cfg.sweep) throw ConfigError("config.sweep: missing; the sweep subcommand needs one");
  const auto points = sweep(cfg.instance, cfg.policy, cfg.sweep->axis, cfg.sweep->values, cfg.trials, cfg.seed,
                            run_options(cfg, o), cfg.sweep->generator);
  std::string text = sweep_csv_header() + "\n";
  std::vector<const ExperimentReport*> reports;
  for (const auto& p : points) {
    text += sweep_csv_row(p, cfg.hash) + "\n";
    reports.push_back(&p.report);
  }
  emit(o, text);
  return truncation_status(reports, o);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Active search for anomalous cells: DGFi and the Chernoff test"};
  app.require_subcommand(1);
  Options o;

  auto* simulate = app.add_subcommand("simulate", "Run one Monte Carlo experiment");
  add_common(simulate, o);
  add_run_flags(simulate, o);
  simulate->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  simulate->add_flag("--trace", o.trace, "Record per-step sums");
  simulate->add_option("--trace-out", o.trace_out, "Trace CSV path");

  auto* compare = app.add_subcommand("compare", "DGFi and Chernoff side by side");
  add_common(compare, o);
  add_run_flags(compare, o);
  compare->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

  auto* rates = app.add_subcommand("rates", "Rate functions and maximin values");
  add_common(rates, o);
  rates->add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"csv", "json"}));
  auto* rates_policy = rates->add_option("--policy", o.policy, "chernoff adds the maximin distributions");

  auto* check = app.add_subcommand("check-optimality", "Optimality conditions and pathological K");
  add_common(check, o);

  auto* oracle = app.add_subcommand("oracle", "Car-race simulation against the closed form");
  add_common(oracle, o);
  oracle->add_option("--horizon", o.horizon, "Simulation steps");
  oracle->add_option("--kappa", o.kappas, "Numbers of drivers")->delimiter(',');

  auto* sweep_cmd = app.add_subcommand("sweep", "Experiments along the config's sweep axis");
  add_common(sweep_cmd, o);
  add_run_flags(sweep_cmd, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*simulate) return cmd_simulate(o);
    if (*compare) return cmd_compare(o);
    if (*rates) {
      if (rates->count("--format") == 0) o.format = "json";
      const bool with_chernoff = rates_policy->count() > 0 && o.policy == "chernoff";
      if (rates_policy->count() > 0) parse_policy(o.policy);
      return cmd_rates(o, with_chernoff);
    }
    if (*check) return cmd_check_optimality(o);
    if (*oracle) return cmd_oracle(o);
    if (*sweep_cmd) return cmd_sweep(o);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitRuntime;
}
