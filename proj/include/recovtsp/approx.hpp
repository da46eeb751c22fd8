#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "recovtsp/core.hpp"
#include "recovtsp/graphkit.hpp"
#include "recovtsp/recov_st.hpp"

namespace recovtsp {

/// The four chained quantities of the Theorem-1 proof:
///   sum_i d_i(C_i) <= sum_i d_i(W''_i) <= 2 sum_i d_i(T'_i) <= 4 sum_i d_i(T_i).
struct StageCosts {
  double tours = 0.0;       // sum_i d_i(C_i)
  double walks = 0.0;       // sum_i d_i(W''_i)
  double treesTwice = 0.0;  // 2 sum_i d_i(T'_i)
  double stFour = 0.0;      // 4 sum_i d_i(T_i)
};

/// Intermediate objects of Algorithm 1 with the per-stage cost inequalities
/// recorded. verify() re-checks every inequality plus feasibility and throws
/// CertificateViolation on the first failure.
struct CertificateChain {
  TreePair treePair;
  std::vector<EdgeSet> substitutedTrees;  // T'_i per stage
  std::vector<Path> paths;                // P
  std::vector<ClosedWalk> walks;          // W''_i per stage
  std::vector<Tour> tours;                // C_i per stage
  StageCosts stageCosts;

  void verify(const Instance& inst) const;
};

enum class BudgetFallback { Throw, Heuristic };

struct Approx4Options {
  ChoicePolicy policy;
  bool forceNonmetric = false;  // run anyway on non-metric input; guarantees void
  bool verifyCertificate = true;
  std::uint64_t stBudget = 50'000'000;  // RecovST work budget (edge-scan units)
  BudgetFallback onStBudget = BudgetFallback::Throw;
  /// Optional known-feasible tree pair seeding the RecovST search (for
  /// instances whose optimal pair is certified externally, e.g. the
  /// tightness family).
  std::optional<TreePair> stIncumbentHint;
};

struct Approx4Result {
  std::vector<Tour> tours;
  double value = 0.0;
  CertificateChain chain;
  std::string guarantee;  // "4-approx", "2-approx" (q = n), or "heuristic"
};

/// Algorithm 1: the 4-approximation for metric RecovTSP (k = 2).
/// Pipeline: recovStExact -> components of T1 ∩ T2 -> double-tree Hamilton
/// path per component under d1+d2 -> substitute into T'_i -> Euler walk with
/// forced paths -> path-preserving shortcut. q = n is the classical TSP and
/// is solved by the double-tree heuristic under d1+d2 (2-approximation).
/// Non-metric inputs are rejected unless forceNonmetric is set.
Approx4Result solveApprox4(const Instance& inst, const Approx4Options& opts = {});

/// Streams every edge set of size q on the complete graph K_n whose union is
/// a collection of pairwise vertex-disjoint simple paths, grouped into its
/// maximal paths. Enumeration order is lexicographic in the sorted edge
/// list. The visitor returns false to stop early. Refuses (with a count
/// estimate) if C(n(n-1)/2, q) exceeds the budget.
void enumerateVertexDisjointPathSets(
    int n, int q, std::uint64_t candidateBudget,
    const std::function<bool(const std::vector<Path>&, const EdgeSet&)>& visit);

struct Enum2Options {
  ChoicePolicy policy;
  bool forceNonmetric = false;
  bool verifyCertificate = true;
  std::uint64_t candidateBudget = 2'000'000;
};

struct Enum2Result {
  std::vector<Tour> tours;
  double value = 0.0;
  std::vector<Path> paths;          // path grouping of the winning candidate
  EdgeSet forcedEdges;              // the winning candidate F
  std::vector<EdgeSet> trees;       // T'_i of the winning candidate
  double treeBound = 0.0;           // sum_i d_i(T'_i) of the winning candidate
  double minTreeBound = 0.0;        // min over all candidates of sum_i d_i(T'_i)
  std::uint64_t candidates = 0;
  std::string guarantee;            // "2-approx" or "heuristic"
};

/// Theorem 2: the 2-approximation for metric k-St-RecovTSP with constant q.
/// For each candidate path set F, builds T'_i = mstForced(d_i, F), runs the
/// Lemma-3/Lemma-4 pipeline per stage with P = F's paths, and keeps the best
/// completed solution; candidates are pruned lazily against the incumbent
/// using the forced-MST lower bound sum_i d_i(T'_i).
Enum2Result solveEnum2(const Instance& inst, const Enum2Options& opts = {});

}  // namespace recovtsp
