#include "actsearch/dgfi.hpp"

#include <algorithm>

#include "actsearch/errors.hpp"

namespace actsearch {

DgfiPolicy::DgfiPolicy(Divergences div, std::size_t probes, std::size_t targets, double threshold)
    : div_(std::move(div)),
      probes_(probes),
      targets_(targets),
      threshold_(threshold),
      hypotheses_((validate_dimensions(div_.size(), probes, targets), HypothesisSpace(div_.size(), targets))) {
  div_.validate();
  if (!(threshold > 0.0)) throw ConfigError("stopping threshold must be positive");
  const double k = static_cast<double>(probes_);
  for (std::size_t m = 0; m < M(); ++m) {
    f_bar_.push_back(f_bar(div_, m));
    f_k_minus_1_.push_back(f_kappa(div_, m, k - 1.0));
    f_k_.push_back(f_kappa(div_, m, k));
  }
  k_star_.reserve(hypotheses_.size());
  for (const auto& set : hypotheses_.sets())
    k_star_.push_back(best_target_probes(multitarget_rates(div_, set), M(), probes_, targets_));
}

DgfiPolicy::DgfiPolicy(const ProblemInstance& inst)
    : DgfiPolicy(inst.divergences(), inst.K(), inst.L(), inst.threshold()) {}

void DgfiPolicy::check_state(const SearchState& state) const {
  if (state.num_cells() != M()) throw DomainError("state and policy disagree on M");
}

CellSet DgfiPolicy::rank_window(const SearchState& state, std::size_t first_rank) const {
  const auto& ranking = state.ranking();
  return CellSet(ranking.begin() + static_cast<std::ptrdiff_t>(first_rank),
                 ranking.begin() + static_cast<std::ptrdiff_t>(first_rank + probes_));
}

CellSet DgfiPolicy::select(const SearchState& state) const {
  if (targets_ > 1) return select_multitarget(state);
  if (probes_ > 1) return select_multi(state);
  return select_single(state);
}

CellSet DgfiPolicy::select_single(const SearchState& state) const {
  check_state(state);
  if (probes_ != 1 || targets_ != 1) throw DomainError("select_single needs K = 1 and L = 1");
  const CellIndex leader = state.at_rank(0);
  return {div_.gf[leader] >= f_bar_[leader] ? leader : state.at_rank(1)};
}

CellSet DgfiPolicy::select_multi(const SearchState& state) const {
  check_state(state);
  if (targets_ != 1) throw DomainError("select_multi needs L = 1");
  const CellIndex leader = state.at_rank(0);
  const bool include_leader = div_.gf[leader] + f_k_minus_1_[leader] >= f_k_[leader];
  return rank_window(state, include_leader ? 0 : 1);
}

CellSet DgfiPolicy::select_multitarget(const SearchState& state) const {
  check_state(state);
  const std::size_t h = hypotheses_.index_of(state.top(targets_));
  return rank_window(state, targets_ - k_star_[h]);
}

bool DgfiPolicy::should_stop(const SearchState& state) const { return state.delta_s(targets_) >= threshold_; }

CellSet DgfiPolicy::decide(const SearchState& state) const {
  CellSet out = state.top(targets_);
  std::sort(out.begin(), out.end());
  return out;
}

PolicyAction DgfiPolicy::next_action(const SearchState& state) const {
  if (should_stop(state)) return {PolicyAction::Kind::Stop, decide(state)};
  return {PolicyAction::Kind::Continue, select(state)};
}

}  // namespace actsearch
