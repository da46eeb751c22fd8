#pragma once

#include <vector>

#include "recovtsp/core.hpp"
#include "recovtsp/graphkit.hpp"

namespace recovtsp {

struct TspResult {
  Tour tour;
  double cost;
};

/// Exact TSP by Held-Karp bitmask dynamic programming; n <= 15. Returns the
/// lexicographically smallest optimal tour in canonical form (vertex 0
/// first, second vertex smaller than the last).
TspResult tspExact(const DistanceMatrix& d);

/// Exact TSP by enumerating all (n-1)!/2 canonical tours; n <= 9. Exists as
/// an independent cross-check for tspExact.
TspResult tspExhaustive(const DistanceMatrix& d);

struct RecovTspResult {
  std::vector<Tour> tours;
  double value;
};

/// Globally optimal solution by enumerating tour tuples. Budget: k = 2 with
/// n <= 8, or k = 3 with n <= 6; anything larger is refused, never
/// subsampled.
RecovTspResult recovTspBruteforce(const Instance& inst);

struct HamiltonPathResult {
  Path path;
  double cost;
};

/// Minimum-cost Hamilton path on a vertex subset (free endpoints), bitmask
/// DP; |vertices| <= 12.
HamiltonPathResult hamiltonPathExact(const DistanceMatrix& d,
                                     const std::vector<Vertex>& vertices);

}  // namespace recovtsp
