#pragma once

#include <cstddef>
#include <vector>

#include "actsearch/instance.hpp"
#include "actsearch/rates.hpp"
#include "actsearch/search_state.hpp"

namespace actsearch {

// What a policy wants to do next: probe a set of cells, or stop and
// declare a target set.
struct PolicyAction {
  enum class Kind { Continue, Stop };
  Kind kind;
  CellSet cells;  // probes (rank order) or declared targets (ascending)
};

// Deterministic DGFi policy.
//
// Selection drives the gap between the L-th and (L+1)-th largest sum LLRs
// at the fastest asymptotic rate. All rate quantities are computed once at
// construction; a step costs one table lookup plus a rank-window slice.
class DgfiPolicy {
 public:
  DgfiPolicy(Divergences div, std::size_t probes, std::size_t targets, double threshold);
  explicit DgfiPolicy(const ProblemInstance& inst);

  std::size_t M() const noexcept { return div_.size(); }
  std::size_t K() const noexcept { return probes_; }
  std::size_t L() const noexcept { return targets_; }
  double threshold() const noexcept { return threshold_; }

  // Dispatches to the rule matching (K, L).
  CellSet select(const SearchState& state) const;

  // K = 1, L = 1: probe the leader if its own divergence beats the
  // leading-edge rate of the others, else the runner-up.
  CellSet select_single(const SearchState& state) const;

  // K > 1, L = 1: ranks 1..K or ranks 2..K+1. Also valid for K = 1, where
  // it coincides with select_single.
  CellSet select_multi(const SearchState& state) const;

  // Any K and L: ranks (L-k*+1)..(L-k*+K) where k* is the cached best
  // number of believed-target cells to probe for the current top-L set.
  CellSet select_multitarget(const SearchState& state) const;

  bool should_stop(const SearchState& state) const;

  // Top-L cells, ascending.
  CellSet decide(const SearchState& state) const;

  PolicyAction next_action(const SearchState& state) const;

  // Cached per-hypothesis choice of k* (index into hypotheses()).
  std::size_t target_probes_for(std::size_t hypothesis) const { return k_star_.at(hypothesis); }
  const HypothesisSpace& hypotheses() const noexcept { return hypotheses_; }

 private:
  CellSet rank_window(const SearchState& state, std::size_t first_rank) const;
  void check_state(const SearchState& state) const;

  Divergences div_;
  std::size_t probes_;
  std::size_t targets_;
  double threshold_;
  std::vector<double> f_bar_;        // per leader cell
  std::vector<double> f_k_minus_1_;  // F_m(K-1)
  std::vector<double> f_k_;          // F_m(K)
  HypothesisSpace hypotheses_;
  std::vector<std::size_t> k_star_;
};

}  // namespace actsearch
