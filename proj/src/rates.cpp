#include "actsearch/rates.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "actsearch/errors.hpp"

namespace actsearch {
namespace {

constexpr double kConditionTol = 1e-9;

void check_cell(const Divergences& div, CellIndex m) {
  div.validate();
  if (div.size() < 2) throw ConfigError("rates need at least two cells");
  if (m >= div.size()) throw DomainError("cell index out of range");
}

double min_other_fg(const Divergences& div, CellIndex m) {
  double lo = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < div.size(); ++j)
    if (j != m) lo = std::min(lo, div.fg[j]);
  return lo;
}

}  // namespace

double f_bar(const Divergences& div, CellIndex m) {
  check_cell(div, m);
  double inv = 0.0;
  for (std::size_t j = 0; j < div.size(); ++j)
    if (j != m) inv += 1.0 / div.fg[j];
  return 1.0 / inv;
}

double f_kappa(const Divergences& div, CellIndex m, double kappa) {
  if (!(kappa >= 0.0)) throw DomainError("kappa must be nonnegative");
  return std::min(kappa * f_bar(div, m), min_other_fg(div, m));
}

double k_tilde(const Divergences& div, CellIndex m) {
  check_cell(div, m);
  const double slowest = min_other_fg(div, m);
  double sum = 0.0;
  for (std::size_t j = 0; j < div.size(); ++j)
    if (j != m) sum += slowest / div.fg[j];
  return sum;
}

double i_m_dgfi(const Divergences& div, CellIndex m, std::size_t probes) {
  const double k = static_cast<double>(probes);
  return std::max(div.gf.at(m) + f_kappa(div, m, k - 1.0), f_kappa(div, m, k));
}

double prior_harmonic_mean(std::span<const double> rates, std::span<const double> priors) {
  if (rates.size() != priors.size()) throw DomainError("one prior per rate is required");
  double inv = 0.0;
  for (std::size_t i = 0; i < rates.size(); ++i) inv += priors[i] / rates[i];
  return 1.0 / inv;
}

double i_dgfi(const Divergences& div, std::size_t probes, std::span<const double> priors) {
  std::vector<double> rates(div.size());
  for (std::size_t m = 0; m < div.size(); ++m) rates[m] = i_m_dgfi(div, m, probes);
  return prior_harmonic_mean(rates, priors);
}

double u_star(const Divergences& div, CellIndex m, std::size_t probes) {
  if (div.gf.at(m) >= f_bar(div, m)) return 1.0;
  return std::clamp(static_cast<double>(probes) - k_tilde(div, m), 0.0, 1.0);
}

double i_m_star(const Divergences& div, CellIndex m, std::size_t probes) {
  const double u = u_star(div, m, probes);
  return u * div.gf[m] + f_kappa(div, m, static_cast<double>(probes) - u);
}

double i_star(const Divergences& div, std::size_t probes, std::span<const double> priors) {
  std::vector<double> rates(div.size());
  for (std::size_t m = 0; m < div.size(); ++m) rates[m] = i_m_star(div, m, probes);
  return prior_harmonic_mean(rates, priors);
}

std::vector<OptimalityVerdict> optimality_check(const Divergences& div, std::size_t probes) {
  std::vector<OptimalityVerdict> out;
  out.reserve(div.size());
  const double k = static_cast<double>(probes);
  for (std::size_t m = 0; m < div.size(); ++m) {
    const double kt = k_tilde(div, m);
    const double tol = kConditionTol * std::max(1.0, kt);
    out.push_back({div.gf[m] >= f_bar(div, m), k <= kt + tol, k >= kt + 1.0 - tol});
  }
  return out;
}

std::vector<std::size_t> pathological_k(const Divergences& div) {
  std::vector<std::size_t> out;
  for (std::size_t k = 2; k < div.size(); ++k) {
    const auto verdicts = optimality_check(div, k);
    if (std::any_of(verdicts.begin(), verdicts.end(), [](const auto& v) { return !v.optimal(); })) out.push_back(k);
  }
  return out;
}

double SetRates::f(double kappa) const { return std::min(kappa * f_bar, min_fg); }
double SetRates::g(double kappa) const { return std::min(kappa * g_bar, min_gf); }

SetRates multitarget_rates(const Divergences& div, std::span<const CellIndex> targets) {
  div.validate();
  std::vector<bool> in_set(div.size(), false);
  for (CellIndex c : targets) {
    if (c >= div.size()) throw DomainError("cell index out of range");
    in_set[c] = true;
  }
  const auto set_size = static_cast<std::size_t>(std::count(in_set.begin(), in_set.end(), true));
  if (set_size != targets.size() || set_size == 0 || set_size >= div.size())
    throw DomainError("target set must hold 1..M-1 distinct cells");
  constexpr double inf = std::numeric_limits<double>::infinity();
  double inv_f = 0.0, inv_g = 0.0, min_fg = inf, min_gf = inf;
  for (std::size_t j = 0; j < div.size(); ++j) {
    if (in_set[j]) {
      inv_g += 1.0 / div.gf[j];
      min_gf = std::min(min_gf, div.gf[j]);
    } else {
      inv_f += 1.0 / div.fg[j];
      min_fg = std::min(min_fg, div.fg[j]);
    }
  }
  return {1.0 / inv_f, 1.0 / inv_g, min_fg, min_gf};
}

ProbeSplitRange feasible_target_probes(std::size_t num_cells, std::size_t probes, std::size_t targets) {
  const std::size_t non_targets = num_cells - targets;
  return {probes > non_targets ? probes - non_targets : 0, std::min(probes, targets)};
}

std::size_t best_target_probes(const SetRates& rates, std::size_t num_cells, std::size_t probes, std::size_t targets) {
  const auto [lo, hi] = feasible_target_probes(num_cells, probes, targets);
  std::size_t best = lo;
  double best_rate = -1.0;
  for (std::size_t k = lo; k <= hi; ++k) {
    const double r = rates.f(static_cast<double>(probes - k)) + rates.g(static_cast<double>(k));
    if (r >= best_rate) {
      best_rate = r;
      best = k;
    }
  }
  return best;
}

double dgfi_set_rate(const SetRates& rates, std::size_t num_cells, std::size_t probes, std::size_t targets) {
  const std::size_t k = best_target_probes(rates, num_cells, probes, targets);
  return rates.f(static_cast<double>(probes - k)) + rates.g(static_cast<double>(k));
}

FractionalSplit optimal_set_split(const SetRates& rates, std::size_t num_cells, std::size_t probes, std::size_t targets) {
  const auto range = feasible_target_probes(num_cells, probes, targets);
  const double lo = static_cast<double>(range.lo);
  const double hi = static_cast<double>(range.hi);
  const double k = static_cast<double>(probes);
  // Both pieces are piecewise linear; the maximum sits at an endpoint or a kink.
  std::vector<double> candidates{lo, hi, rates.min_gf / rates.g_bar, k - rates.min_fg / rates.f_bar};
  FractionalSplit best{lo, -1.0};
  for (double u : candidates) {
    if (!(u >= lo && u <= hi)) continue;
    const double r = rates.f(k - u) + rates.g(u);
    if (r > best.rate || (r == best.rate && u > best.u)) best = {u, r};
  }
  return best;
}

double i_star_multitarget(const Divergences& div, const HypothesisSpace& hypotheses, std::span<const double> priors) {
  std::vector<double> rates(hypotheses.size());
  for (std::size_t h = 0; h < hypotheses.size(); ++h) rates[h] = multitarget_rates(div, hypotheses[h]).single_probe_rate();
  return prior_harmonic_mean(rates, priors);
}

double car_oracle(std::span<const double> speeds, std::size_t drivers, std::size_t horizon) {
  if (drivers > speeds.size()) throw DomainError("more drivers than cars");
  if (drivers == 0 || horizon == 0) throw DomainError("car_oracle needs at least one driver and one step");
  for (double s : speeds)
    if (!(s > 0.0)) throw DomainError("car speeds must be positive");
  std::vector<double> pos(speeds.size(), 0.0);
  std::vector<std::size_t> order(speeds.size());
  for (std::size_t t = 0; t < horizon; ++t) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(drivers), order.end(),
                      [&](std::size_t a, std::size_t b) { return pos[a] > pos[b] || (pos[a] == pos[b] && a < b); });
    for (std::size_t i = 0; i < drivers; ++i) pos[order[i]] -= speeds[order[i]];
  }
  return -*std::max_element(pos.begin(), pos.end()) / static_cast<double>(horizon);
}

RateReport analyze_rates(const ProblemInstance& inst) {
  const auto& div = inst.divergences();
  RateReport report;
  report.M = inst.M();
  report.K = inst.K();
  report.L = inst.L();
  const auto verdicts = optimality_check(div, inst.K());
  for (std::size_t m = 0; m < inst.M(); ++m) {
    report.cells.push_back({f_bar(div, m), k_tilde(div, m), i_m_dgfi(div, m, inst.K()), u_star(div, m, inst.K()),
                            i_m_star(div, m, inst.K()), verdicts[m]});
  }
  std::vector<double> dgfi_rates, star_rates;
  for (std::size_t h = 0; h < inst.hypotheses().size(); ++h) {
    const auto& targets = inst.hypotheses()[h];
    const SetRates set = multitarget_rates(div, targets);
    HypothesisRates hr{targets,
                       inst.priors()[h],
                       set,
                       best_target_probes(set, inst.M(), inst.K(), inst.L()),
                       dgfi_set_rate(set, inst.M(), inst.K(), inst.L()),
                       optimal_set_split(set, inst.M(), inst.K(), inst.L())};
    dgfi_rates.push_back(hr.dgfi_rate);
    star_rates.push_back(hr.relaxed.rate);
    report.hypotheses.push_back(std::move(hr));
  }
  report.rate_dgfi = prior_harmonic_mean(dgfi_rates, inst.priors());
  report.rate_star = prior_harmonic_mean(star_rates, inst.priors());
  report.pathological = pathological_k(div);
  if (inst.L() == 1) {
    report.all_optimal = std::all_of(verdicts.begin(), verdicts.end(), [](const auto& v) { return v.optimal(); });
  } else {
    report.all_optimal = std::all_of(report.hypotheses.begin(), report.hypotheses.end(), [](const HypothesisRates& h) {
      return std::abs(h.relaxed.u - std::round(h.relaxed.u)) <= 1e-9;
    });
  }
  return report;
}

}  // namespace actsearch
