#include "actsearch/chernoff.hpp"

#include <algorithm>
#include <numeric>

#include "actsearch/errors.hpp"
#include "actsearch/simplex.hpp"

namespace actsearch {
namespace {

bool contains(std::span<const CellIndex> set, CellIndex c) { return std::find(set.begin(), set.end(), c) != set.end(); }

}  // namespace

double pairwise_kl(const Divergences& div, std::span<const CellIndex> probes, std::span<const CellIndex> truth,
                   std::span<const CellIndex> alternative) {
  double d = 0.0;
  for (CellIndex c : probes) {
    const bool in_truth = contains(truth, c);
    const bool in_alt = contains(alternative, c);
    if (in_truth && !in_alt) d += div.gf.at(c);
    if (in_alt && !in_truth) d += div.fg.at(c);
  }
  return d;
}

double pairwise_kl(const Divergences& div, std::span<const CellIndex> probes, CellIndex m, CellIndex j) {
  if (m == j) throw DomainError("pairwise_kl needs two different hypotheses");
  const CellIndex truth[] = {m};
  const CellIndex alt[] = {j};
  return pairwise_kl(div, probes, truth, alt);
}

ActionDistribution solve_maximin(const Divergences& div, std::size_t probes, const HypothesisSpace& hypotheses,
                                 std::size_t truth) {
  if (binomial(div.size(), probes) > kMaxChernoffActions)
    throw ConfigError("too many probe sets for the exact maximin solver");
  ActionDistribution out;
  out.actions = enumerate_subsets(div.size(), probes);
  const std::size_t n = out.actions.size();

  // Variables: q_0..q_{n-1}, then z. Maximize z.
  std::vector<double> objective(n + 1, 0.0);
  objective[n] = 1.0;
  std::vector<std::vector<double>> rows;
  std::vector<double> bounds;
  for (std::size_t alt = 0; alt < hypotheses.size(); ++alt) {
    if (alt == truth) continue;
    // z - sum_A q_A KL(A) <= 0
    std::vector<double> row(n + 1);
    for (std::size_t a = 0; a < n; ++a) row[a] = -pairwise_kl(div, out.actions[a], hypotheses[truth], hypotheses[alt]);
    row[n] = 1.0;
    rows.push_back(std::move(row));
    bounds.push_back(0.0);
  }
  std::vector<double> simplex_row(n + 1, 1.0);
  simplex_row[n] = 0.0;
  rows.push_back(std::move(simplex_row));
  bounds.push_back(1.0);

  const LpSolution sol = maximize_lp(objective, rows, bounds);
  out.value = sol.objective;
  if (!(out.value > 0.0))
    throw DegenerateInstanceError("some pair of hypotheses cannot be told apart by any probe set");
  out.weights.assign(sol.x.begin(), sol.x.begin() + static_cast<std::ptrdiff_t>(n));
  // A positive value forces sum q = 1 at the optimum; renormalize away round-off.
  const double total = std::accumulate(out.weights.begin(), out.weights.end(), 0.0);
  for (double& w : out.weights) w /= total;
  return out;
}

ChernoffPolicy::ChernoffPolicy(Divergences div, std::size_t probes, std::size_t targets, double threshold)
    : div_(std::move(div)),
      probes_(probes),
      targets_(targets),
      hypotheses_((validate_dimensions(div_.size(), probes, targets), HypothesisSpace(div_.size(), targets))),
      stopper_(div_, probes, targets, threshold) {
  dists_.reserve(hypotheses_.size());
  cumulative_.reserve(hypotheses_.size());
  for (std::size_t h = 0; h < hypotheses_.size(); ++h) {
    dists_.push_back(solve_maximin(div_, probes_, hypotheses_, h));
    std::vector<double> cum(dists_.back().weights.size());
    std::partial_sum(dists_.back().weights.begin(), dists_.back().weights.end(), cum.begin());
    cumulative_.push_back(std::move(cum));
  }
}

ChernoffPolicy::ChernoffPolicy(const ProblemInstance& inst)
    : ChernoffPolicy(inst.divergences(), inst.K(), inst.L(), inst.threshold()) {}

std::size_t ChernoffPolicy::ml_hypothesis(const SearchState& state) const {
  return hypotheses_.index_of(state.top(targets_));
}

CellSet ChernoffPolicy::sample_action(std::size_t hypothesis, RandomStream& rng) const {
  const auto& cum = cumulative_.at(hypothesis);
  const auto& weights = dists_[hypothesis].weights;
  const double u = rng.uniform() * cum.back();
  std::size_t pick = 0;
  for (std::size_t a = 0; a < cum.size(); ++a) {
    if (weights[a] == 0.0) continue;
    pick = a;
    if (u < cum[a]) break;
  }
  return dists_[hypothesis].actions[pick];
}

CellSet ChernoffPolicy::select(const SearchState& state, RandomStream& rng) const {
  if (state.num_cells() != M()) throw DomainError("state and policy disagree on M");
  return sample_action(ml_hypothesis(state), rng);
}

PolicyAction ChernoffPolicy::next_action(const SearchState& state, RandomStream& rng) const {
  if (should_stop(state)) return {PolicyAction::Kind::Stop, decide(state)};
  return {PolicyAction::Kind::Continue, select(state, rng)};
}

double ChernoffPolicy::aggregate_rate(std::span<const double> priors) const {
  std::vector<double> values(dists_.size());
  for (std::size_t h = 0; h < dists_.size(); ++h) values[h] = dists_[h].value;
  return prior_harmonic_mean(values, priors);
}

CellIndex ml_estimate(const SearchState& state) { return state.at_rank(0); }

}  // namespace actsearch
