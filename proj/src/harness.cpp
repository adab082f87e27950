#include "actsearch/harness.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "actsearch/errors.hpp"
#include "actsearch/random.hpp"
#include "actsearch/search_state.hpp"

namespace actsearch {

std::string to_string(PolicyKind kind) { return kind == PolicyKind::Dgfi ? "dgfi" : "chernoff"; }

PolicyKind parse_policy(const std::string& name) {
  if (name == "dgfi") return PolicyKind::Dgfi;
  if (name == "chernoff") return PolicyKind::Chernoff;
  throw ConfigError("unknown policy '" + name + "' (expected dgfi or chernoff)");
}

std::string to_string(SweepAxis axis) { return axis == SweepAxis::Cost ? "c" : "M"; }

SweepAxis parse_axis(const std::string& name) {
  if (name == "c") return SweepAxis::Cost;
  if (name == "M") return SweepAxis::Cells;
  throw ConfigError("unknown sweep axis '" + name + "' (expected c or M)");
}

double error_bound(std::size_t num_cells, std::size_t targets, double cost) {
  const auto m = static_cast<double>(num_cells);
  const auto l = static_cast<double>(targets);
  return targets == 1 ? (m - 1.0) * cost : (m - l) * l * cost;
}

std::uint64_t hypothesis_stream_seed(std::uint64_t base_seed) { return derive_seed(base_seed, ~std::uint64_t{0}); }

Experiment::Experiment(const ProblemInstance& inst, PolicyKind policy)
    : inst_(inst), policy_(policy), rates_(analyze_rates(inst_)) {
  if (policy_ == PolicyKind::Dgfi) {
    dgfi_ = std::make_unique<DgfiPolicy>(inst_);
    policy_rate_ = rates_.rate_dgfi;
  } else {
    chernoff_ = std::make_unique<ChernoffPolicy>(inst_);
    policy_rate_ = chernoff_->aggregate_rate(inst_.priors());
  }
}

std::size_t Experiment::default_horizon() const {
  const double asymptotic = std::ceil(200.0 * inst_.threshold() / rates_.rate_dgfi);
  return std::max(static_cast<std::size_t>(asymptotic), 1000 * inst_.M());
}

TrialResult Experiment::run_trial(const CellSet& true_set, std::uint64_t seed, std::size_t max_horizon,
                                  bool trace) const {
  // Validates size, range and distinctness.
  inst_.hypotheses().index_of(true_set);
  if (max_horizon == 0) throw ConfigError("max_horizon must be positive");

  const auto& models = inst_.models();
  std::vector<bool> is_target(inst_.M(), false);
  for (CellIndex c : true_set) is_target[c] = true;

  TrialResult result;
  result.true_set = true_set;
  std::sort(result.true_set.begin(), result.true_set.end());
  result.seed = seed;

  RandomStream rng(seed);
  SearchState state(inst_.M());
  std::vector<double> llrs;
  while (true) {
    const PolicyAction action = dgfi_ ? dgfi_->next_action(state) : chernoff_->next_action(state, rng);
    if (action.kind == PolicyAction::Kind::Stop) {
      result.declared = action.cells;
      break;
    }
    if (state.time() >= max_horizon) {
      result.truncated = true;
      result.declared = dgfi_ ? dgfi_->decide(state) : chernoff_->decide(state);
      break;
    }
    llrs.clear();
    for (CellIndex c : action.cells) {
      const ProcessModel& model = models[c];
      llrs.push_back(model.llr(sample(is_target[c] ? model.present() : model.absent(), rng)));
    }
    state.apply_increments(action.cells, llrs);
    if (trace) result.trace.push_back({state.time(), action.cells, state.sums()});
  }
  result.tau = state.time();
  // Truncated searches count as errors.
  result.correct = !result.truncated && result.declared == result.true_set;
  return result;
}

ExperimentReport Experiment::run(std::size_t trials, std::uint64_t base_seed, const RunOptions& options) const {
  if (trials == 0) throw ConfigError("trials must be at least 1");
  const std::size_t horizon = options.max_horizon.value_or(default_horizon());
  if (horizon == 0) throw ConfigError("max_horizon must be positive");

  const auto& hyps = inst_.hypotheses();
  const auto& priors = inst_.priors();
  std::vector<double> cum(priors.size());
  std::partial_sum(priors.begin(), priors.end(), cum.begin());
  std::vector<std::size_t> truth(trials);
  RandomStream hyp_rng(hypothesis_stream_seed(base_seed));
  for (std::size_t i = 0; i < trials; ++i) {
    const double u = hyp_rng.uniform() * cum.back();
    truth[i] = static_cast<std::size_t>(std::upper_bound(cum.begin(), cum.end(), u) - cum.begin());
    truth[i] = std::min(truth[i], cum.size() - 1);
  }

  std::vector<TrialResult> results(trials);
  auto work = [&](std::size_t first, std::size_t stride) {
    for (std::size_t i = first; i < trials; i += stride)
      results[i] = run_trial(hyps[truth[i]], derive_seed(base_seed, i), horizon, options.trace);
  };
  const unsigned workers = std::max(1u, std::min<unsigned>(options.workers, static_cast<unsigned>(trials)));
  if (workers == 1) {
    work(0, 1);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w, workers);
  }

  ExperimentReport r;
  r.policy = policy_;
  r.M = inst_.M();
  r.K = inst_.K();
  r.L = inst_.L();
  r.c = inst_.cost();
  r.seed = base_seed;
  r.trials = trials;
  r.max_horizon = horizon;
  r.pe_bound = error_bound(r.M, r.L, r.c);
  r.rate_I = policy_rate_;
  r.rate_Istar = rates_.rate_star;
  r.per_hypothesis.resize(hyps.size());
  for (std::size_t h = 0; h < hyps.size(); ++h) {
    r.per_hypothesis[h].targets = hyps[h];
    r.per_hypothesis[h].prior = priors[h];
  }

  // Fold in trial order.
  std::size_t errors = 0, truncated = 0;
  double tau_sum = 0.0, tau_sq = 0.0;
  for (std::size_t i = 0; i < trials; ++i) {
    const TrialResult& t = results[i];
    const double tau = static_cast<double>(t.tau);
    errors += t.correct ? 0 : 1;
    truncated += t.truncated ? 1 : 0;
    tau_sum += tau;
    tau_sq += tau * tau;
    auto& hs = r.per_hypothesis[truth[i]];
    ++hs.trials;
    hs.errors += t.correct ? 0 : 1;
    hs.mean_tau += tau;
  }
  const auto n = static_cast<double>(trials);
  r.pe_hat = static_cast<double>(errors) / n;
  r.truncation_rate = static_cast<double>(truncated) / n;
  r.mean_tau = tau_sum / n;
  const double var = trials > 1 ? std::max(0.0, (tau_sq - n * r.mean_tau * r.mean_tau) / (n - 1.0)) : 0.0;
  r.tau_ci95 = 1.96 * std::sqrt(var) / std::sqrt(n);
  r.bayes_risk = r.pe_hat + r.c * r.mean_tau;

  // Prior-weighted delay over the hypotheses that were drawn, renormalized.
  double weight = 0.0, weighted = 0.0;
  for (auto& hs : r.per_hypothesis) {
    if (hs.trials == 0) continue;
    hs.mean_tau /= static_cast<double>(hs.trials);
    weight += hs.prior;
    weighted += hs.prior * hs.mean_tau;
  }
  r.prior_weighted_tau = weight > 0.0 ? weighted / weight : 0.0;

  if (options.trace) r.traced_trials = std::move(results);
  return r;
}

std::vector<ProcessModel> ExponentialLadder::cells(std::size_t num_cells) const {
  std::vector<ProcessModel> out;
  out.reserve(num_cells);
  for (std::size_t m = 1; m <= num_cells; ++m)
    out.emplace_back(Exponential{lambda_f}, Exponential{lambda_g_offset + lambda_g_step * static_cast<double>(m)});
  return out;
}

std::vector<SweepPoint> sweep(const ProblemInstance& base, PolicyKind policy, SweepAxis axis,
                              const std::vector<double>& values, std::size_t trials, std::uint64_t base_seed,
                              const RunOptions& options, const std::optional<ExponentialLadder>& ladder) {
  if (values.empty()) throw ConfigError("sweep needs at least one value");
  if (axis == SweepAxis::Cells && !ladder) throw ConfigError("an M sweep needs a cell generator");
  std::vector<SweepPoint> out;
  for (double v : values) {
    std::optional<ProblemInstance> inst;
    if (axis == SweepAxis::Cost) {
      if (!(v > 0.0 && v < 1.0)) throw ConfigError("swept c values must lie in (0, 1)");
      // Same cells and prior, new cost.
      PerSubsetPrior prior;
      for (std::size_t h = 0; h < base.hypotheses().size(); ++h)
        prior.entries.emplace_back(base.hypotheses()[h], base.priors()[h]);
      inst.emplace(base.models(), base.K(), base.L(), v, prior);
    } else {
      if (!(v >= 2.0) || v != std::floor(v)) throw ConfigError("swept M values must be integers >= 2");
      inst.emplace(ladder->cells(static_cast<std::size_t>(v)), base.K(), base.L(), base.cost(), UniformPrior{});
    }
    const Experiment exp(*inst, policy);
    ExperimentReport report = exp.run(trials, base_seed, options);
    const double log_c = -std::log(report.c);
    const double delay_ratio = report.mean_tau * report.rate_I / log_c;
    const double risk_ratio = report.bayes_risk * report.rate_I / (report.c * log_c);
    out.push_back({v, std::move(report), delay_ratio, risk_ratio});
  }
  return out;
}

}  // namespace actsearch
