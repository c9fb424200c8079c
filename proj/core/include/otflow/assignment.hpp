#pragma once

#include <vector>

#include "otflow/cost.hpp"
#include "otflow/types.hpp"

namespace otflow {

/// Permutation minimizing sum_i C(i, sigma(i)); gated entries are
/// inadmissible. Dispatches to exhaustive enumeration for n <= 10 (where
/// ties are broken by the lexicographically smallest permutation) and to the
/// augmenting-path solver above that size.
///
/// Throws InfeasibleError when no all-finite perfect matching exists.
std::vector<Index> exact_assignment(const CostMatrix& cost);

/// Exhaustive search in lexicographic permutation order; n <= 10 only.
std::vector<Index> assignment_by_enumeration(const CostMatrix& cost);

/// Shortest-augmenting-path (Jonker-Volgenant style) solver for any n.
/// Optimal cost is exact; among cost ties the returned permutation is
/// deterministic but not necessarily lexicographically smallest.
std::vector<Index> assignment_by_augmenting_path(const CostMatrix& cost);

}  // namespace otflow
