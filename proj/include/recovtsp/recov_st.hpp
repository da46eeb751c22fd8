#pragma once

#include <cstdint>
#include <optional>

#include "recovtsp/core.hpp"
#include "recovtsp/graphkit.hpp"

namespace recovtsp {

/// A pair of spanning trees for the recoverable spanning tree problem.
struct TreePair {
  EdgeSet t1, t2;
  double value = 0.0;  // d1(t1) + d2(t2), canonical summation
  EdgeSet intersection;
  bool optimal = false;        // proven optimal (search completed)
  bool fromIncumbentHint = false;  // optimality shown by bound against a supplied incumbent
  std::uint64_t nodesExplored = 0;
};

struct RecovStOptions {
  /// Work budget in edge-scan units (each branch-and-bound node costs about
  /// two Kruskal passes, ~n(n-1) units); the solver refuses with
  /// BudgetExceeded once spent. The default covers desk-scale instances
  /// (n <= 8, any q) with a wide margin.
  std::uint64_t workBudget = 50'000'000;
  /// Optional known-feasible pair used as the starting incumbent. When the
  /// search then completes without improving it, the pair is returned as-is
  /// with optimality certified by the pruning bound.
  std::optional<TreePair> incumbentHint;
};

/// Optimal solution of RecovST(d1, d2, q): two spanning trees with
/// |T1 ∩ T2| >= q minimizing d1(T1) + d2(T2).
///
/// Branch-and-bound over q-edge forests F, each completed/bounded by
/// mstForced(d1, F) + mstForced(d2, F); any optimal pair contains a q-edge
/// forest of its intersection and forcing that forest cannot raise either
/// MST cost, so the minimum over forests is the optimum. Edges are explored
/// in ascending d1+d2 order (ties lexicographic), so results are
/// deterministic. Requires q <= n-1.
TreePair recovStExact(const DistanceMatrix& d1, const DistanceMatrix& d2, int q,
                      const RecovStOptions& opts = {});

/// Independent oracle: enumerates all spanning-tree pairs. Requires n <= 6.
TreePair recovStBruteforce(const DistanceMatrix& d1, const DistanceMatrix& d2, int q);

/// Feasible upper bound, flagged non-optimal for q > 0: T1 = MST(d1),
/// F = the q edges of T1 cheapest under d2, T2 = mstForced(d2, F).
TreePair recovStHeuristic(const DistanceMatrix& d1, const DistanceMatrix& d2, int q);

}  // namespace recovtsp
