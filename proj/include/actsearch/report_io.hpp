#pragma once

#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "actsearch/chernoff.hpp"
#include "actsearch/harness.hpp"
#include "actsearch/rates.hpp"

namespace actsearch {

// 10 significant digits, "%.10g". Integral values print without a point.
std::string format_number(double x);

// policy,M,K,L,c,seed,trials,pe_hat,pe_bound,mean_tau,tau_ci95,bayes_risk,
// rate_I,rate_Istar,truncation_rate,config_hash
std::string report_csv_header();
std::string report_csv_row(const ExperimentReport& r, const std::string& config_hash);

// Report columns followed by value,delay_ratio,risk_ratio.
std::string sweep_csv_header();
std::string sweep_csv_row(const SweepPoint& p, const std::string& config_hash);

// n,probes,S_0..S_{M-1}, one row per step of every traced trial (prefixed
// by the trial index).
void write_trace_csv(std::ostream& out, const ExperimentReport& r);

nlohmann::json report_to_json(const ExperimentReport& r, const std::string& config_hash);
nlohmann::json rate_report_to_json(const RateReport& r, const Divergences& div);
// One row per cell plus a final "all" row with the aggregate rates.
void write_rate_csv(std::ostream& out, const RateReport& r, const Divergences& div);
nlohmann::json chernoff_to_json(const ChernoffPolicy& policy, std::span<const double> priors);

}  // namespace actsearch
