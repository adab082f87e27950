#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "actsearch/instance.hpp"

namespace actsearch {

// Rate functions of the DGFi policy and of the optimal policy.
//
// All quantities are asymptotic growth rates of the gap between the L-th
// and (L+1)-th largest sum LLRs, in nats per step. The functions below
// read only the divergence table, so they can be evaluated without
// instantiating any distributions. Every one of them throws
// DegenerateInstanceError if the table holds a zero divergence.

// Leading-edge rate with one probe shared among the cells j != m:
// 1 / sum_{j != m} 1 / D(f_j || g_j).
double f_bar(const Divergences& div, CellIndex m);

// Rate with kappa probes: min(kappa * f_bar, min_{j != m} D(f_j || g_j)).
// kappa may be fractional.
double f_kappa(const Divergences& div, CellIndex m, double kappa);

// Point where f_kappa stops growing.
double k_tilde(const Divergences& div, CellIndex m);

double i_m_dgfi(const Divergences& div, CellIndex m, std::size_t probes);
double i_dgfi(const Divergences& div, std::size_t probes, std::span<const double> priors);

// Maximizer over u in [0, 1] of u * D(g_m || f_m) + f_kappa(K - u), in
// closed form.
double u_star(const Divergences& div, CellIndex m, std::size_t probes);
double i_m_star(const Divergences& div, CellIndex m, std::size_t probes);
double i_star(const Divergences& div, std::size_t probes, std::span<const double> priors);

// Harmonic mean of per-hypothesis rates weighted by the prior.
double prior_harmonic_mean(std::span<const double> rates, std::span<const double> priors);

struct OptimalityVerdict {
  bool target_dominates;  // (a) D(g_m || f_m) >= f_bar
  bool below_switch;      // (b) K <= k_tilde
  bool past_switch;       // (c) K >= k_tilde + 1
  bool optimal() const noexcept { return target_dominates || below_switch || past_switch; }
};

std::vector<OptimalityVerdict> optimality_check(const Divergences& div, std::size_t probes);

// Probe budgets K in {2, ..., M-1} for which some cell fails all three
// conditions above. At most three values can appear.
std::vector<std::size_t> pathological_k(const Divergences& div);

// Rates for a candidate target set D (multi-target case).
struct SetRates {
  double f_bar;   // 1 / sum_{j not in D} 1 / D(f_j || g_j)
  double g_bar;   // 1 / sum_{j in D} 1 / D(g_j || f_j)
  double min_fg;  // slowest non-target cell
  double min_gf;  // slowest target cell

  double f(double kappa) const;  // min(kappa * f_bar, min_fg)
  double g(double kappa) const;  // min(kappa * g_bar, min_gf)
  // Rate when one probe is used: max(f_bar, g_bar).
  double single_probe_rate() const noexcept { return f_bar > g_bar ? f_bar : g_bar; }
};

SetRates multitarget_rates(const Divergences& div, std::span<const CellIndex> targets);

// Range of target-cell probe counts k for which the probed rank window
// (L-k+1 .. L-k+K) stays inside 1..M.
struct ProbeSplitRange {
  std::size_t lo;
  std::size_t hi;
};
ProbeSplitRange feasible_target_probes(std::size_t num_cells, std::size_t probes, std::size_t targets);

// Integer number of believed-target cells DGFi probes: the argmax of
// f(K - k) + g(k) over the feasible range, ties toward larger k.
std::size_t best_target_probes(const SetRates& rates, std::size_t num_cells, std::size_t probes, std::size_t targets);

// Rate DGFi achieves when D is the true target set.
double dgfi_set_rate(const SetRates& rates, std::size_t num_cells, std::size_t probes, std::size_t targets);

// Fractional relaxation: maximizer over real u in the feasible range of
// f(K - u) + g(u), found by scanning the breakpoints. DGFi is conjectured
// optimal for L > 1, K > 1 whenever this maximizer is an integer.
struct FractionalSplit {
  double u;
  double rate;
};
FractionalSplit optimal_set_split(const SetRates& rates, std::size_t num_cells, std::size_t probes, std::size_t targets);

// I*_L for a single probe: prior-weighted harmonic mean of max(f_bar, g_bar).
double i_star_multitarget(const Divergences& div, const HypothesisSpace& hypotheses, std::span<const double> priors);

// Deterministic "cars and drivers" simulation. Cars start at 0 and move
// toward -infinity; each step the `drivers` cars closest to the origin each
// advance by their speed. Returns the average speed of the leading edge,
// -(position of the car closest to the origin) / horizon.
// Throws DomainError if drivers exceeds the number of cars.
double car_oracle(std::span<const double> speeds, std::size_t drivers, std::size_t horizon);

struct CellRates {
  double f_bar;
  double k_tilde;
  double i_dgfi;
  double u_star;
  double i_star;
  OptimalityVerdict verdict;
};

struct HypothesisRates {
  CellSet targets;
  double prior;
  SetRates set;
  std::size_t k_star;
  double dgfi_rate;
  FractionalSplit relaxed;
};

struct RateReport {
  std::size_t M, K, L;
  std::vector<CellRates> cells;             // single-target analysis, one per cell
  std::vector<HypothesisRates> hypotheses;  // one per target set
  double rate_dgfi;                         // I(Gamma_DGFi)
  double rate_star;                         // I*
  std::vector<std::size_t> pathological;    // single-target pathological K
  bool all_optimal;
};

RateReport analyze_rates(const ProblemInstance& inst);

}  // namespace actsearch
