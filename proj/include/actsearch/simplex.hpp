#pragma once

#include <cstddef>
#include <vector>

namespace actsearch {

struct LpSolution {
  std::vector<double> x;
  double objective;
  std::size_t pivots;
};

// Dense primal simplex for
//
//   maximize c.x  subject to  A x <= b,  x >= 0,
//
// with b >= 0, so the slack basis is feasible and no phase one is needed.
// Bland's rule picks both the entering and leaving variables, which makes
// the pivot sequence deterministic and rules out cycling on degenerate
// vertices. Throws DomainError if the problem is unbounded or b has a
// negative entry.
LpSolution maximize_lp(const std::vector<double>& objective, const std::vector<std::vector<double>>& constraints,
                       const std::vector<double>& bounds);

}  // namespace actsearch
