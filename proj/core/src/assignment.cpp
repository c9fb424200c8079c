#include "otflow/assignment.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "otflow/errors.hpp"

namespace otflow {

namespace {

/// Kuhn's bipartite matching on the finite entries; used to reject
/// infeasible instances before the potential-based solve sees them.
bool has_finite_perfect_matching(const CostMatrix& cost) {
  const Index n = cost.size();
  std::vector<Index> match_col(static_cast<std::size_t>(n), -1);
  std::vector<bool> visited;
  std::function<bool(Index)> try_row = [&](Index i) -> bool {
    for (Index j = 0; j < n; ++j) {
      if (cost.gated(i, j) || visited[static_cast<std::size_t>(j)]) {
        continue;
      }
      visited[static_cast<std::size_t>(j)] = true;
      const Index owner = match_col[static_cast<std::size_t>(j)];
      if (owner < 0 || try_row(owner)) {
        match_col[static_cast<std::size_t>(j)] = i;
        return true;
      }
    }
    return false;
  };
  for (Index i = 0; i < n; ++i) {
    visited.assign(static_cast<std::size_t>(n), false);
    if (!try_row(i)) {
      return false;
    }
  }
  return true;
}

}  // namespace

std::vector<Index> assignment_by_enumeration(const CostMatrix& cost) {
  const Index n = cost.size();
  if (n > 10) {
    throw std::invalid_argument("assignment_by_enumeration: n must be at most 10");
  }
  std::vector<Index> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), Index{0});
  std::vector<Index> best;
  double best_cost = std::numeric_limits<double>::infinity();
  do {
    double total = 0.0;
    bool feasible = true;
    for (Index i = 0; i < n && feasible; ++i) {
      const Index j = perm[static_cast<std::size_t>(i)];
      if (cost.gated(i, j)) {
        feasible = false;
      } else {
        total += cost.value(i, j);
      }
    }
    // Strict improvement keeps the first (lexicographically smallest) optimum.
    if (feasible && total < best_cost) {
      best_cost = total;
      best = perm;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  if (best.empty()) {
    throw InfeasibleError("exact_assignment: no all-finite perfect matching exists");
  }
  return best;
}

std::vector<Index> assignment_by_augmenting_path(const CostMatrix& cost) {
  if (!has_finite_perfect_matching(cost)) {
    throw InfeasibleError("exact_assignment: no all-finite perfect matching exists");
  }
  const Index n = cost.size();
  // Gated entries get a sentinel far above any feasible total, so they are
  // never chosen once feasibility is established.
  constexpr double kGatedCost = 1e30;
  auto entry = [&](Index i, Index j) {
    return cost.gated(i, j) ? kGatedCost : cost.value(i, j);
  };

  // Potentials-based shortest augmenting path over a 1-based frame.
  const std::size_t m = static_cast<std::size_t>(n) + 1;
  std::vector<double> u(m, 0.0);
  std::vector<double> v(m, 0.0);
  std::vector<Index> col_owner(m, 0);  // col_owner[j] = row matched to column j
  std::vector<Index> way(m, 0);
  for (Index i = 1; i <= n; ++i) {
    col_owner[0] = i;
    Index j0 = 0;
    std::vector<double> min_reduced(m, std::numeric_limits<double>::infinity());
    std::vector<bool> used(m, false);
    do {
      used[static_cast<std::size_t>(j0)] = true;
      const Index i0 = col_owner[static_cast<std::size_t>(j0)];
      double delta = std::numeric_limits<double>::infinity();
      Index j1 = 0;
      for (Index j = 1; j <= n; ++j) {
        if (used[static_cast<std::size_t>(j)]) {
          continue;
        }
        const double reduced = entry(i0 - 1, j - 1) - u[static_cast<std::size_t>(i0)] -
                               v[static_cast<std::size_t>(j)];
        if (reduced < min_reduced[static_cast<std::size_t>(j)]) {
          min_reduced[static_cast<std::size_t>(j)] = reduced;
          way[static_cast<std::size_t>(j)] = j0;
        }
        if (min_reduced[static_cast<std::size_t>(j)] < delta) {
          delta = min_reduced[static_cast<std::size_t>(j)];
          j1 = j;
        }
      }
      for (Index j = 0; j <= n; ++j) {
        if (used[static_cast<std::size_t>(j)]) {
          u[static_cast<std::size_t>(col_owner[static_cast<std::size_t>(j)])] += delta;
          v[static_cast<std::size_t>(j)] -= delta;
        } else {
          min_reduced[static_cast<std::size_t>(j)] -= delta;
        }
      }
      j0 = j1;
    } while (col_owner[static_cast<std::size_t>(j0)] != 0);
    do {
      const Index j1 = way[static_cast<std::size_t>(j0)];
      col_owner[static_cast<std::size_t>(j0)] = col_owner[static_cast<std::size_t>(j1)];
      j0 = j1;
    } while (j0 != 0);
  }

  std::vector<Index> assignment(static_cast<std::size_t>(n), -1);
  for (Index j = 1; j <= n; ++j) {
    const Index i = col_owner[static_cast<std::size_t>(j)];
    if (i > 0) {
      assignment[static_cast<std::size_t>(i - 1)] = j - 1;
    }
  }
  return assignment;
}

std::vector<Index> exact_assignment(const CostMatrix& cost) {
  return cost.size() <= 10 ? assignment_by_enumeration(cost)
                           : assignment_by_augmenting_path(cost);
}

}  // namespace otflow
