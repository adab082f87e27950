#include "actsearch/instance.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <string>

#include "actsearch/errors.hpp"

namespace actsearch {
namespace {

constexpr std::size_t kMaxCells = 64;
constexpr double kMaxHypotheses = 1e6;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require_unit_sum(const std::vector<double>& w, const char* what) {
  const double total = std::accumulate(w.begin(), w.end(), 0.0);
  if (std::abs(total - 1.0) > 1e-12) throw ConfigError(std::string(what) + " must sum to 1");
}

void require_positive(const std::vector<double>& w, const char* what) {
  for (double x : w)
    if (!(x > 0.0) || !std::isfinite(x)) throw ConfigError(std::string(what) + " must be strictly positive");
}

}  // namespace

std::uint64_t cell_mask(std::span<const CellIndex> cells) {
  std::uint64_t mask = 0;
  for (CellIndex c : cells) mask |= std::uint64_t{1} << c;
  return mask;
}

std::vector<CellSet> enumerate_subsets(std::size_t n, std::size_t k) {
  std::vector<CellSet> out;
  if (k > n) return out;
  CellSet cur(k);
  std::iota(cur.begin(), cur.end(), CellIndex{0});
  while (true) {
    out.push_back(cur);
    // Advance to the next combination in lexicographic order.
    std::size_t i = k;
    while (i > 0 && cur[i - 1] == n - k + (i - 1)) --i;
    if (i == 0) break;
    ++cur[i - 1];
    for (std::size_t j = i; j < k; ++j) cur[j] = cur[j - 1] + 1;
  }
  return out;
}

double binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0.0;
  k = std::min(k, n - k);
  double r = 1.0;
  for (std::size_t i = 1; i <= k; ++i) r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
  return std::round(r);
}

void Divergences::validate() const {
  if (gf.size() != fg.size()) throw ConfigError("divergence table rows differ in length");
  for (std::size_t m = 0; m < gf.size(); ++m) {
    if (!(gf[m] > 0.0) || !std::isfinite(gf[m]) || !(fg[m] > 0.0) || !std::isfinite(fg[m])) {
      std::ostringstream os;
      os << "cell " << m << " has a zero or non-finite divergence (D(g||f)=" << gf[m] << ", D(f||g)=" << fg[m]
         << "); it cannot be told apart";
      throw DegenerateInstanceError(os.str());
    }
  }
}

void validate_dimensions(std::size_t num_cells, std::size_t probes, std::size_t targets) {
  if (num_cells < 2) throw ConfigError("M must be at least 2");
  if (num_cells > kMaxCells) throw ConfigError("M must be at most 64");
  if (probes < 1 || probes >= num_cells) throw ConfigError("K must satisfy 1 <= K < M");
  if (targets < 1 || targets >= num_cells) throw ConfigError("L must satisfy 1 <= L < M");
}

HypothesisSpace::HypothesisSpace(std::size_t num_cells, std::size_t num_targets)
    : num_cells_(num_cells), num_targets_(num_targets) {
  if (num_cells > kMaxCells) throw ConfigError("M must be at most 64");
  if (binomial(num_cells, num_targets) > kMaxHypotheses) throw ConfigError("too many target sets to enumerate");
  sets_ = enumerate_subsets(num_cells, num_targets);
  by_mask_.reserve(sets_.size());
  for (std::size_t h = 0; h < sets_.size(); ++h) by_mask_.emplace(cell_mask(sets_[h]), h);
}

std::size_t HypothesisSpace::index_of(std::span<const CellIndex> cells) const {
  if (cells.size() != num_targets_) throw DomainError("target set has the wrong size");
  for (CellIndex c : cells)
    if (c >= num_cells_) throw DomainError("cell index out of range");
  const auto it = by_mask_.find(cell_mask(cells));
  if (it == by_mask_.end()) throw DomainError("target set contains duplicates");
  return it->second;
}

std::vector<double> resolve_prior(const HypothesisSpace& space, const PriorSpec& prior) {
  const std::size_t n = space.size();
  return std::visit(
      Overloaded{
          [&](const UniformPrior&) { return std::vector<double>(n, 1.0 / static_cast<double>(n)); },
          [&](const PerCellPrior& p) {
            if (p.weights.size() != space.num_cells()) throw ConfigError("priors: need one weight per cell");
            require_positive(p.weights, "priors");
            if (space.num_targets() == 1) {
              require_unit_sum(p.weights, "priors");
              return p.weights;
            }
            std::vector<double> out(n);
            for (std::size_t h = 0; h < n; ++h) {
              double w = 1.0;
              for (CellIndex c : space[h]) w *= p.weights[c];
              out[h] = w;
            }
            const double total = std::accumulate(out.begin(), out.end(), 0.0);
            for (double& w : out) w /= total;
            return out;
          },
          [&](const PerSubsetPrior& p) {
            std::vector<double> out(n, 0.0);
            std::vector<bool> seen(n, false);
            for (const auto& [cells, w] : p.entries) {
              std::size_t h;
              try {
                h = space.index_of(cells);
              } catch (const DomainError& e) {
                throw ConfigError(std::string("subset_priors: ") + e.what());
              }
              if (seen[h]) throw ConfigError("subset_priors: duplicate target set");
              seen[h] = true;
              out[h] = w;
            }
            if (std::find(seen.begin(), seen.end(), false) != seen.end())
              throw ConfigError("subset_priors: every L-subset needs a prior");
            require_positive(out, "subset_priors");
            require_unit_sum(out, "subset_priors");
            return out;
          }},
      prior);
}

ProblemInstance::ProblemInstance(std::vector<ProcessModel> models, std::size_t probes, std::size_t targets, double cost,
                                 const PriorSpec& prior)
    : models_(std::move(models)),
      probes_(probes),
      targets_(targets),
      cost_(cost),
      threshold_(-std::log(cost)),
      hypotheses_((validate_dimensions(models_.size(), probes, targets), HypothesisSpace(models_.size(), targets))) {
  if (!(cost > 0.0 && cost < 1.0)) throw ConfigError("c must lie in (0, 1)");
  div_.gf.reserve(M());
  div_.fg.reserve(M());
  for (const auto& model : models_) {
    div_.gf.push_back(model.d_gf());
    div_.fg.push_back(model.d_fg());
  }
  div_.validate();
  priors_ = resolve_prior(hypotheses_, prior);
}

}  // namespace actsearch
