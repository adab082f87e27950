#include "actsearch/report_io.hpp"

#include <cstdio>
#include <sstream>

namespace actsearch {

using nlohmann::json;

std::string format_number(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

namespace {

std::string join_cells(const CellSet& cells) {
  std::string out;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(cells[i]);
  }
  return out;
}

// Rounds through the fixed text format so JSON and CSV agree digit for digit.
double stable(double x) { return std::stod(format_number(x)); }

}  // namespace

std::string report_csv_header() {
  return "policy,M,K,L,c,seed,trials,pe_hat,pe_bound,mean_tau,tau_ci95,bayes_risk,rate_I,rate_Istar,truncation_rate,"
         "config_hash";
}

std::string report_csv_row(const ExperimentReport& r, const std::string& config_hash) {
  std::ostringstream os;
  os << to_string(r.policy) << ',' << r.M << ',' << r.K << ',' << r.L << ',' << format_number(r.c) << ',' << r.seed
     << ',' << r.trials << ',' << format_number(r.pe_hat) << ',' << format_number(r.pe_bound) << ','
     << format_number(r.mean_tau) << ',' << format_number(r.tau_ci95) << ',' << format_number(r.bayes_risk) << ','
     << format_number(r.rate_I) << ',' << format_number(r.rate_Istar) << ',' << format_number(r.truncation_rate) << ','
     << config_hash;
  return os.str();
}

std::string sweep_csv_header() { return report_csv_header() + ",value,delay_ratio,risk_ratio"; }

std::string sweep_csv_row(const SweepPoint& p, const std::string& config_hash) {
  return report_csv_row(p.report, config_hash) + ',' + format_number(p.value) + ',' + format_number(p.delay_ratio) +
         ',' + format_number(p.risk_ratio);
}

void write_trace_csv(std::ostream& out, const ExperimentReport& r) {
  out << "trial,n,probes";
  for (std::size_t m = 0; m < r.M; ++m) out << ",S_" << m;
  out << '\n';
  for (std::size_t t = 0; t < r.traced_trials.size(); ++t) {
    for (const TraceRow& row : r.traced_trials[t].trace) {
      out << t << ',' << row.n << ',' << join_cells(row.probes);
      for (double s : row.sums) out << ',' << format_number(s);
      out << '\n';
    }
  }
}

json report_to_json(const ExperimentReport& r, const std::string& config_hash) {
  json per = json::array();
  for (const auto& h : r.per_hypothesis) {
    per.push_back({{"targets", h.targets},
                   {"prior", stable(h.prior)},
                   {"trials", h.trials},
                   {"errors", h.errors},
                   {"mean_tau", stable(h.mean_tau)}});
  }
  return {{"policy", to_string(r.policy)},
          {"M", r.M},
          {"K", r.K},
          {"L", r.L},
          {"c", stable(r.c)},
          {"seed", r.seed},
          {"trials", r.trials},
          {"max_horizon", r.max_horizon},
          {"pe_hat", stable(r.pe_hat)},
          {"pe_bound", stable(r.pe_bound)},
          {"mean_tau", stable(r.mean_tau)},
          {"tau_ci95", stable(r.tau_ci95)},
          {"bayes_risk", stable(r.bayes_risk)},
          {"rate_I", stable(r.rate_I)},
          {"rate_Istar", stable(r.rate_Istar)},
          {"truncation_rate", stable(r.truncation_rate)},
          {"prior_weighted_tau", stable(r.prior_weighted_tau)},
          {"per_hypothesis", per},
          {"config_hash", config_hash}};
}

json rate_report_to_json(const RateReport& r, const Divergences& div) {
  json cells = json::array();
  for (std::size_t m = 0; m < r.cells.size(); ++m) {
    const CellRates& c = r.cells[m];
    cells.push_back({{"cell", m},
                     {"d_gf", stable(div.gf[m])},
                     {"d_fg", stable(div.fg[m])},
                     {"f_bar", stable(c.f_bar)},
                     {"k_tilde", stable(c.k_tilde)},
                     {"i_dgfi", stable(c.i_dgfi)},
                     {"u_star", stable(c.u_star)},
                     {"i_star", stable(c.i_star)},
                     {"cond_a", c.verdict.target_dominates},
                     {"cond_b", c.verdict.below_switch},
                     {"cond_c", c.verdict.past_switch},
                     {"optimal", c.verdict.optimal()}});
  }
  json hyps = json::array();
  for (const auto& h : r.hypotheses) {
    hyps.push_back({{"targets", h.targets},
                    {"prior", stable(h.prior)},
                    {"f_bar", stable(h.set.f_bar)},
                    {"g_bar", stable(h.set.g_bar)},
                    {"k_star", h.k_star},
                    {"dgfi_rate", stable(h.dgfi_rate)},
                    {"u_star", stable(h.relaxed.u)},
                    {"optimal_rate", stable(h.relaxed.rate)}});
  }
  return {{"M", r.M},
          {"K", r.K},
          {"L", r.L},
          {"cells", cells},
          {"hypotheses", hyps},
          {"rate_dgfi", stable(r.rate_dgfi)},
          {"rate_star", stable(r.rate_star)},
          {"pathological_k", r.pathological},
          {"all_optimal", r.all_optimal}};
}

void write_rate_csv(std::ostream& out, const RateReport& r, const Divergences& div) {
  out << "cell,d_gf,d_fg,f_bar,k_tilde,i_dgfi,u_star,i_star,cond_a,cond_b,cond_c,optimal\n";
  for (std::size_t m = 0; m < r.cells.size(); ++m) {
    const CellRates& c = r.cells[m];
    out << m << ',' << format_number(div.gf[m]) << ',' << format_number(div.fg[m]) << ',' << format_number(c.f_bar)
        << ',' << format_number(c.k_tilde) << ',' << format_number(c.i_dgfi) << ',' << format_number(c.u_star) << ','
        << format_number(c.i_star) << ',' << c.verdict.target_dominates << ',' << c.verdict.below_switch << ','
        << c.verdict.past_switch << ',' << c.verdict.optimal() << '\n';
  }
  out << "all,,,,," << format_number(r.rate_dgfi) << ",," << format_number(r.rate_star) << ",,,," << r.all_optimal
      << '\n';
}

json chernoff_to_json(const ChernoffPolicy& policy, std::span<const double> priors) {
  json dists = json::array();
  for (std::size_t h = 0; h < policy.hypotheses().size(); ++h) {
    const ActionDistribution& d = policy.distribution(h);
    json support = json::array();
    for (std::size_t a = 0; a < d.actions.size(); ++a)
      if (d.weights[a] > 0.0) support.push_back({{"probes", d.actions[a]}, {"weight", stable(d.weights[a])}});
    dists.push_back({{"targets", policy.hypotheses()[h]}, {"value", stable(d.value)}, {"support", support}});
  }
  return {{"rate_chernoff", stable(policy.aggregate_rate(priors))}, {"distributions", dists}};
}

}  // namespace actsearch
