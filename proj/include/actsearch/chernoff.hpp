#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "actsearch/dgfi.hpp"
#include "actsearch/instance.hpp"
#include "actsearch/random.hpp"
#include "actsearch/search_state.hpp"

namespace actsearch {

// Maximin mixed strategy over probe sets for one hypothesis.
struct ActionDistribution {
  std::vector<CellSet> actions;  // all K-subsets, lexicographic
  std::vector<double> weights;   // sums to 1
  double value;                  // min over alternatives of the expected KL
};

// KL divergence between the joint observation laws of probe set `probes`
// under target sets `truth` and `alternative`. Only cells whose marginal
// differs contribute: D(g||f) for cells in truth \ alternative and D(f||g)
// for cells in alternative \ truth.
double pairwise_kl(const Divergences& div, std::span<const CellIndex> probes, std::span<const CellIndex> truth,
                   std::span<const CellIndex> alternative);

// Single-target form: hypothesis m against hypothesis j.
double pairwise_kl(const Divergences& div, std::span<const CellIndex> probes, CellIndex m, CellIndex j);

// Solves max_q min_{alternatives} sum_A q_A KL(A) as a linear program with
// the exact simplex solver. Throws DegenerateInstanceError if the maximin
// value is zero.
ActionDistribution solve_maximin(const Divergences& div, std::size_t probes, const HypothesisSpace& hypotheses,
                                 std::size_t truth);

// Largest instance (number of probe sets) the exact solver accepts.
inline constexpr double kMaxChernoffActions = 1e4;

// Randomized Chernoff test. Probe sets are drawn from the maximin
// distribution of the current maximum-likelihood hypothesis; stopping and
// the final decision are those of DGFi.
class ChernoffPolicy {
 public:
  ChernoffPolicy(Divergences div, std::size_t probes, std::size_t targets, double threshold);
  explicit ChernoffPolicy(const ProblemInstance& inst);

  std::size_t M() const noexcept { return div_.size(); }
  std::size_t K() const noexcept { return probes_; }
  std::size_t L() const noexcept { return targets_; }

  const HypothesisSpace& hypotheses() const noexcept { return hypotheses_; }
  const ActionDistribution& distribution(std::size_t hypothesis) const { return dists_.at(hypothesis); }

  // Index into hypotheses() of the current ML estimate: the top-L cells.
  std::size_t ml_hypothesis(const SearchState& state) const;

  CellSet select(const SearchState& state, RandomStream& rng) const;
  CellSet sample_action(std::size_t hypothesis, RandomStream& rng) const;

  bool should_stop(const SearchState& state) const { return stopper_.should_stop(state); }
  CellSet decide(const SearchState& state) const { return stopper_.decide(state); }
  PolicyAction next_action(const SearchState& state, RandomStream& rng) const;

  // Maximin value for each hypothesis and its prior-weighted harmonic mean.
  double rate(std::size_t hypothesis) const { return dists_.at(hypothesis).value; }
  double aggregate_rate(std::span<const double> priors) const;

 private:
  Divergences div_;
  std::size_t probes_;
  std::size_t targets_;
  HypothesisSpace hypotheses_;
  std::vector<ActionDistribution> dists_;
  std::vector<std::vector<double>> cumulative_;
  DgfiPolicy stopper_;
};

// Maximum-likelihood single target: the cell with the largest sum LLR.
CellIndex ml_estimate(const SearchState& state);

}  // namespace actsearch
