#include "actsearch/search_state.hpp"

#include <algorithm>
#include <numeric>

#include "actsearch/errors.hpp"

namespace actsearch {

std::vector<CellIndex> rank_cells(std::span<const double> sums) {
  std::vector<CellIndex> order(sums.size());
  std::iota(order.begin(), order.end(), CellIndex{0});
  std::stable_sort(order.begin(), order.end(), [&](CellIndex a, CellIndex b) { return sums[a] > sums[b]; });
  return order;
}

SearchState::SearchState(std::size_t num_cells, bool keep_history)
    : sums_(num_cells, 0.0), counts_(num_cells, 0), ranking_(num_cells), keep_history_(keep_history) {
  if (num_cells < 2) throw ConfigError("a search needs at least two cells");
  std::iota(ranking_.begin(), ranking_.end(), CellIndex{0});
}

void SearchState::check_probes(std::span<const CellIndex> probes, std::size_t values) const {
  if (probes.size() != values) throw DomainError("one observation per probed cell is required");
  std::vector<bool> seen(sums_.size(), false);
  for (CellIndex c : probes) {
    if (c >= sums_.size()) throw DomainError("probe index out of range");
    if (seen[c]) throw DomainError("duplicate probe");
    seen[c] = true;
  }
}

void SearchState::apply_observations(std::span<const CellIndex> probes, std::span<const double> observations,
                                     std::span<const ProcessModel> models) {
  check_probes(probes, observations.size());
  if (models.size() != sums_.size()) throw DomainError("one process model per cell is required");
  std::vector<double> llrs(probes.size());
  for (std::size_t i = 0; i < probes.size(); ++i) llrs[i] = models[probes[i]].llr(observations[i]);
  if (keep_history_) history_.push_back({CellSet(probes.begin(), probes.end()), {observations.begin(), observations.end()}});
  for (std::size_t i = 0; i < probes.size(); ++i) {
    sums_[probes[i]] += llrs[i];
    ++counts_[probes[i]];
  }
  ++time_;
  rerank();
}

void SearchState::apply_increments(std::span<const CellIndex> probes, std::span<const double> llrs) {
  check_probes(probes, llrs.size());
  for (std::size_t i = 0; i < probes.size(); ++i) {
    sums_[probes[i]] += llrs[i];
    ++counts_[probes[i]];
  }
  ++time_;
  rerank();
}

double SearchState::delta_s(std::size_t targets) const {
  if (targets < 1 || targets >= sums_.size()) throw DomainError("delta_s needs 1 <= L < M");
  return sums_[ranking_[targets - 1]] - sums_[ranking_[targets]];
}

CellSet SearchState::top(std::size_t count) const {
  return CellSet(ranking_.begin(), ranking_.begin() + static_cast<std::ptrdiff_t>(count));
}

void SearchState::set_sums(std::vector<double> sums) {
  if (sums.size() != sums_.size()) throw DomainError("sums vector has the wrong length");
  sums_ = std::move(sums);
  rerank();
}

void SearchState::rerank() { ranking_ = rank_cells(sums_); }

}  // namespace actsearch
