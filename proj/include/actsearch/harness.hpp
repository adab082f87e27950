#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "actsearch/chernoff.hpp"
#include "actsearch/dgfi.hpp"
#include "actsearch/instance.hpp"
#include "actsearch/rates.hpp"

namespace actsearch {

enum class PolicyKind { Dgfi, Chernoff };

std::string to_string(PolicyKind kind);
// Accepts "dgfi" or "chernoff"; throws ConfigError otherwise.
PolicyKind parse_policy(const std::string& name);

// State after step n of a traced trial.
struct TraceRow {
  std::size_t n;
  CellSet probes;
  std::vector<double> sums;
};

struct TrialResult {
  CellSet true_set;
  CellSet declared;
  std::size_t tau = 0;
  bool correct = false;
  bool truncated = false;
  std::uint64_t seed = 0;
  std::vector<TraceRow> trace;  // empty unless tracing was requested
};

struct HypothesisStats {
  CellSet targets;
  double prior = 0.0;
  std::size_t trials = 0;
  std::size_t errors = 0;
  double mean_tau = 0.0;
};

struct ExperimentReport {
  PolicyKind policy;
  std::size_t M, K, L;
  double c;
  std::uint64_t seed;
  std::size_t trials;
  std::size_t max_horizon;
  double pe_hat;
  double pe_bound;
  double mean_tau;
  double tau_ci95;
  double bayes_risk;  // pe_hat + c * mean_tau
  double rate_I;      // rate function of the policy that ran
  double rate_Istar;  // optimal rate function
  double truncation_rate;
  double prior_weighted_tau;  // sum over hypotheses of prior * conditional mean delay
  std::vector<HypothesisStats> per_hypothesis;
  std::vector<TrialResult> traced_trials;
};

struct RunOptions {
  std::optional<std::size_t> max_horizon;
  unsigned workers = 1;
  bool trace = false;
};

// Error-probability bound: (M-1)c for one target, (M-L)Lc otherwise.
double error_bound(std::size_t num_cells, std::size_t targets, double cost);

// Runs sequential-search trials for one instance and one policy. Policy
// tables (rate caches, maximin distributions) are built once here and
// shared read-only by all trials.
class Experiment {
 public:
  Experiment(const ProblemInstance& inst, PolicyKind policy);

  const ProblemInstance& instance() const noexcept { return inst_; }
  PolicyKind policy() const noexcept { return policy_; }
  const RateReport& rates() const noexcept { return rates_; }
  double policy_rate() const noexcept { return policy_rate_; }

  // max(ceil(200 * (-log c) / I_DGFi), 1000 * M).
  std::size_t default_horizon() const;

  // One search with the given targets. Cells in true_set emit g, the others
  // f. Hitting max_horizon stops the search with truncated = true.
  TrialResult run_trial(const CellSet& true_set, std::uint64_t seed, std::size_t max_horizon, bool trace = false) const;

  // Draws each trial's target set from the prior (hypothesis stream seeded
  // from base_seed), runs trial i with seed derive_seed(base_seed, i), and
  // aggregates in trial order. The result does not depend on workers.
  ExperimentReport run(std::size_t trials, std::uint64_t base_seed, const RunOptions& options = {}) const;

 private:
  ProblemInstance inst_;
  PolicyKind policy_;
  RateReport rates_;
  double policy_rate_;
  std::unique_ptr<DgfiPolicy> dgfi_;
  std::unique_ptr<ChernoffPolicy> chernoff_;
};

// Seed of the stream that draws the true target sets.
std::uint64_t hypothesis_stream_seed(std::uint64_t base_seed);

enum class SweepAxis { Cost, Cells };
std::string to_string(SweepAxis axis);
SweepAxis parse_axis(const std::string& name);

// Rule for building cells when the number of cells is swept:
// f_m = Exp(lambda_f), g_m = Exp(lambda_g_offset + lambda_g_step * m) for
// m = 1..M.
struct ExponentialLadder {
  double lambda_f;
  double lambda_g_offset;
  double lambda_g_step = 1.0;

  std::vector<ProcessModel> cells(std::size_t num_cells) const;
};

struct SweepPoint {
  double value;
  ExperimentReport report;
  double delay_ratio;  // mean_tau * I / (-log c)
  double risk_ratio;   // bayes_risk * I / (-c log c)
};

// One experiment per value. Cost sweeps keep the cells of `base`; cell
// sweeps rebuild them with `ladder` and use a uniform prior. Throws
// ConfigError for invalid values (c outside (0,1), M < K+1 or M < L+1,
// missing ladder).
std::vector<SweepPoint> sweep(const ProblemInstance& base, PolicyKind policy, SweepAxis axis,
                              const std::vector<double>& values, std::size_t trials, std::uint64_t base_seed,
                              const RunOptions& options = {},
                              const std::optional<ExponentialLadder>& ladder = std::nullopt);

}  // namespace actsearch
