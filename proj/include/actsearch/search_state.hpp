#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "actsearch/instance.hpp"

namespace actsearch {

// One recorded step: which cells were probed and what each returned.
struct ProbeRecord {
  CellSet probes;
  std::vector<double> observations;
};

// Per-cell sum LLRs S_m(n), probe counts N_m(n) and the ranking of cells by
// S_m(n) (descending, ties to the lower index). The ranking is recomputed on
// every update, so it is always consistent with the sums.
class SearchState {
 public:
  // Throws ConfigError for M < 2.
  explicit SearchState(std::size_t num_cells, bool keep_history = false);

  std::size_t time() const noexcept { return time_; }
  std::size_t num_cells() const noexcept { return sums_.size(); }
  const std::vector<double>& sums() const noexcept { return sums_; }
  const std::vector<std::size_t>& counts() const noexcept { return counts_; }
  // ranking()[r] is the cell with the (r+1)-th largest sum.
  const std::vector<CellIndex>& ranking() const noexcept { return ranking_; }
  CellIndex at_rank(std::size_t r) const { return ranking_.at(r); }
  const std::vector<ProbeRecord>& history() const noexcept { return history_; }

  // Adds log g_m(y) - log f_m(y) to S_m for every probed cell and advances
  // time by one. Throws DomainError on duplicate or out-of-range probes or
  // a length mismatch.
  void apply_observations(std::span<const CellIndex> probes, std::span<const double> observations,
                          std::span<const ProcessModel> models);

  // Same, with the LLR increments already computed.
  void apply_increments(std::span<const CellIndex> probes, std::span<const double> llrs);

  // Gap between the L-th and (L+1)-th largest sums; always >= 0.
  double delta_s(std::size_t targets) const;

  // Top-L cells, in rank order.
  CellSet top(std::size_t count) const;

  // Overwrites the sums (counts and time untouched). Meant for tests and
  // analysis tools that evaluate the policies at arbitrary states.
  void set_sums(std::vector<double> sums);

 private:
  void check_probes(std::span<const CellIndex> probes, std::size_t values) const;
  void rerank();

  std::size_t time_ = 0;
  std::vector<double> sums_;
  std::vector<std::size_t> counts_;
  std::vector<CellIndex> ranking_;
  bool keep_history_;
  std::vector<ProbeRecord> history_;
};

// Ranking of `sums` in descending order with index tie-break.
std::vector<CellIndex> rank_cells(std::span<const double> sums);

}  // namespace actsearch
