#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

#include "actsearch/distributions.hpp"

namespace actsearch {

// Cells are indexed 0..M-1 throughout the library.
using CellIndex = std::size_t;

// A set of cells, kept sorted ascending.
using CellSet = std::vector<CellIndex>;

std::uint64_t cell_mask(std::span<const CellIndex> cells);

// All k-subsets of {0..n-1} in lexicographic order.
std::vector<CellSet> enumerate_subsets(std::size_t n, std::size_t k);

double binomial(std::size_t n, std::size_t k);

// Per-cell divergences in nats: gf[m] = D(g_m || f_m), fg[m] = D(f_m || g_m).
// Every rate quantity is a function of this table alone.
struct Divergences {
  std::vector<double> gf;
  std::vector<double> fg;

  std::size_t size() const noexcept { return gf.size(); }

  // Throws DegenerateInstanceError on any zero, negative or non-finite entry.
  void validate() const;
};

// The C(M, L) hypotheses "the targets are exactly this L-subset".
class HypothesisSpace {
 public:
  HypothesisSpace(std::size_t num_cells, std::size_t num_targets);

  std::size_t num_cells() const noexcept { return num_cells_; }
  std::size_t num_targets() const noexcept { return num_targets_; }
  std::size_t size() const noexcept { return sets_.size(); }
  const CellSet& operator[](std::size_t h) const { return sets_[h]; }
  const std::vector<CellSet>& sets() const noexcept { return sets_; }

  // Index of the hypothesis whose target set is `cells` (any order).
  std::size_t index_of(std::span<const CellIndex> cells) const;

 private:
  std::size_t num_cells_;
  std::size_t num_targets_;
  std::vector<CellSet> sets_;
  std::unordered_map<std::uint64_t, std::size_t> by_mask_;
};

struct UniformPrior {};
// One positive weight per cell. For L > 1 the prior of a target set is
// proportional to the product of its members' weights.
struct PerCellPrior {
  std::vector<double> weights;
};
// Explicit prior for every L-subset.
struct PerSubsetPrior {
  std::vector<std::pair<CellSet, double>> entries;
};
using PriorSpec = std::variant<UniformPrior, PerCellPrior, PerSubsetPrior>;

// Complete experiment definition: M cells, K probes per step, L targets,
// per-observation cost c, and the prior over target sets.
class ProblemInstance {
 public:
  // Throws ConfigError (or DegenerateInstanceError) when invalid.
  ProblemInstance(std::vector<ProcessModel> models, std::size_t probes, std::size_t targets, double cost,
                  const PriorSpec& prior = UniformPrior{});

  std::size_t M() const noexcept { return models_.size(); }
  std::size_t K() const noexcept { return probes_; }
  std::size_t L() const noexcept { return targets_; }
  double cost() const noexcept { return cost_; }
  // -log c in nats.
  double threshold() const noexcept { return threshold_; }

  const std::vector<ProcessModel>& models() const noexcept { return models_; }
  const Divergences& divergences() const noexcept { return div_; }
  const HypothesisSpace& hypotheses() const noexcept { return hypotheses_; }
  // Prior aligned with hypotheses().
  const std::vector<double>& priors() const noexcept { return priors_; }

 private:
  std::vector<ProcessModel> models_;
  std::size_t probes_;
  std::size_t targets_;
  double cost_;
  double threshold_;
  Divergences div_;
  HypothesisSpace hypotheses_;
  std::vector<double> priors_;
};

// Checks shared by ProblemInstance and the analysis-only entry points.
void validate_dimensions(std::size_t num_cells, std::size_t probes, std::size_t targets);

std::vector<double> resolve_prior(const HypothesisSpace& space, const PriorSpec& prior);

}  // namespace actsearch
