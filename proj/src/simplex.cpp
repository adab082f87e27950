#include "actsearch/simplex.hpp"

#include <cmath>
#include <limits>
#include <numeric>

#include "actsearch/errors.hpp"

namespace actsearch {

LpSolution maximize_lp(const std::vector<double>& objective, const std::vector<std::vector<double>>& constraints,
                       const std::vector<double>& bounds) {
  const std::size_t n = objective.size();
  const std::size_t m = constraints.size();
  if (bounds.size() != m) throw DomainError("one bound per constraint row is required");
  for (double b : bounds)
    if (!(b >= 0.0)) throw DomainError("simplex needs nonnegative bounds");

  // Tableau rows: [A | I | b]; columns 0..n-1 structural, n..n+m-1 slack.
  const std::size_t width = n + m + 1;
  std::vector<std::vector<double>> t(m, std::vector<double>(width, 0.0));
  double scale = 1.0;
  for (std::size_t i = 0; i < m; ++i) {
    if (constraints[i].size() != n) throw DomainError("constraint row has the wrong length");
    for (std::size_t j = 0; j < n; ++j) {
      t[i][j] = constraints[i][j];
      scale = std::max(scale, std::abs(constraints[i][j]));
    }
    t[i][n + i] = 1.0;
    t[i][n + m] = bounds[i];
  }
  // Reduced costs (maximization: entering candidates have positive cost).
  std::vector<double> cost(width, 0.0);
  for (std::size_t j = 0; j < n; ++j) cost[j] = objective[j];
  std::vector<std::size_t> basis(m);
  std::iota(basis.begin(), basis.end(), n);

  const double eps = 1e-12 * scale;
  std::size_t pivots = 0;
  while (true) {
    std::size_t enter = width;
    for (std::size_t j = 0; j + 1 < width; ++j) {
      if (cost[j] > eps) {
        enter = j;
        break;
      }
    }
    if (enter == width) break;

    double best_ratio = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < m; ++i)
      if (t[i][enter] > eps) best_ratio = std::min(best_ratio, t[i][n + m] / t[i][enter]);
    if (!std::isfinite(best_ratio)) throw DomainError("linear program is unbounded");
    // Among tied rows, the one whose basic variable has the lowest index leaves.
    std::size_t leave = m;
    for (std::size_t i = 0; i < m; ++i) {
      if (t[i][enter] <= eps || t[i][n + m] / t[i][enter] > best_ratio + eps) continue;
      if (leave == m || basis[i] < basis[leave]) leave = i;
    }

    const double pivot = t[leave][enter];
    for (double& v : t[leave]) v /= pivot;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == leave) continue;
      const double f = t[i][enter];
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < width; ++j) t[i][j] -= f * t[leave][j];
      t[i][enter] = 0.0;
    }
    const double f = cost[enter];
    for (std::size_t j = 0; j < width; ++j) cost[j] -= f * t[leave][j];
    cost[enter] = 0.0;
    basis[leave] = enter;
    ++pivots;
  }

  LpSolution sol{std::vector<double>(n, 0.0), 0.0, pivots};
  for (std::size_t i = 0; i < m; ++i)
    if (basis[i] < n) sol.x[basis[i]] = std::max(0.0, t[i][n + m]);
  for (std::size_t j = 0; j < n; ++j) sol.objective += objective[j] * sol.x[j];
  return sol;
}

}  // namespace actsearch
