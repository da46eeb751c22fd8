#pragma once

// Shared helpers for the test suites: independent reference implementations
// (kept deliberately separate from the library code paths they check) and
// small random generators.

#include <algorithm>
#include <limits>
#include <numeric>
#include <vector>

#include "recovtsp/core.hpp"
#include "recovtsp/graphkit.hpp"
#include "recovtsp/rng.hpp"

namespace recovtsp::testutil {

/// Prim's algorithm; reference MST cost independent of the Kruskal path.
inline double primMstCost(const DistanceMatrix& d) {
  const int n = d.size();
  std::vector<bool> inTree(static_cast<std::size_t>(n), false);
  std::vector<double> best(static_cast<std::size_t>(n), std::numeric_limits<double>::infinity());
  best[0] = 0.0;
  double total = 0.0;
  for (int step = 0; step < n; ++step) {
    int pick = -1;
    for (int v = 0; v < n; ++v)
      if (!inTree[static_cast<std::size_t>(v)] &&
          (pick < 0 || best[static_cast<std::size_t>(v)] < best[static_cast<std::size_t>(pick)]))
        pick = v;
    inTree[static_cast<std::size_t>(pick)] = true;
    total += best[static_cast<std::size_t>(pick)];
    for (int v = 0; v < n; ++v)
      if (!inTree[static_cast<std::size_t>(v)])
        best[static_cast<std::size_t>(v)] =
            std::min(best[static_cast<std::size_t>(v)], d(pick, v));
  }
  return total;
}

/// Uniform random labelled tree on n vertices via a Pruefer sequence.
inline EdgeSet randomTree(int n, SplitMix64& rng) {
  if (n == 1) return EdgeSet{};
  if (n == 2) return EdgeSet{{Edge(0, 1)}};
  std::vector<int> pruefer(static_cast<std::size_t>(n - 2));
  for (int& x : pruefer) x = static_cast<int>(rng.nextBelow(static_cast<std::uint64_t>(n)));
  std::vector<int> degree(static_cast<std::size_t>(n), 1);
  for (int x : pruefer) ++degree[static_cast<std::size_t>(x)];
  EdgeSet tree;
  std::vector<bool> used(static_cast<std::size_t>(n), false);
  for (int x : pruefer) {
    for (int leaf = 0; leaf < n; ++leaf)
      if (degree[static_cast<std::size_t>(leaf)] == 1 && !used[static_cast<std::size_t>(leaf)]) {
        tree.insert(Edge(leaf, x));
        used[static_cast<std::size_t>(leaf)] = true;
        --degree[static_cast<std::size_t>(x)];
        break;
      }
  }
  int a = -1, b = -1;
  for (int v = 0; v < n; ++v)
    if (!used[static_cast<std::size_t>(v)] && degree[static_cast<std::size_t>(v)] == 1)
      (a < 0 ? a : b) = v;
  tree.insert(Edge(a, b));
  return tree;
}

/// Random subset of tree edges forming pairwise vertex-disjoint paths,
/// grouped into maximal paths.
inline std::vector<Path> randomDisjointPaths(const EdgeSet& tree, int n, SplitMix64& rng) {
  std::vector<Edge> pool(tree.edges());
  rng.shuffle(pool);
  std::vector<int> degree(static_cast<std::size_t>(n), 0);
  EdgeSet picked;
  const std::size_t want = rng.nextBelow(tree.size() + 1);
  for (const Edge& e : pool) {
    if (picked.size() == want) break;
    if (degree[static_cast<std::size_t>(e.u)] >= 2 || degree[static_cast<std::size_t>(e.v)] >= 2)
      continue;
    picked.insert(e);
    ++degree[static_cast<std::size_t>(e.u)];
    ++degree[static_cast<std::size_t>(e.v)];
  }
  // A forest with max degree 2 is a disjoint union of simple paths; walk
  // each from its smaller endpoint.
  std::vector<std::vector<Vertex>> adj(static_cast<std::size_t>(n));
  for (const Edge& e : picked) {
    adj[static_cast<std::size_t>(e.u)].push_back(e.v);
    adj[static_cast<std::size_t>(e.v)].push_back(e.u);
  }
  std::vector<Path> paths;
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  for (int v = 0; v < n; ++v) {
    if (seen[static_cast<std::size_t>(v)] || adj[static_cast<std::size_t>(v)].size() != 1)
      continue;
    Path p;
    Vertex cur = v, prev = -1;
    while (cur >= 0) {
      p.order.push_back(cur);
      seen[static_cast<std::size_t>(cur)] = true;
      Vertex next = -1;
      for (Vertex w : adj[static_cast<std::size_t>(cur)])
        if (w != prev) next = w;
      prev = cur;
      cur = next;
    }
    paths.push_back(std::move(p));
  }
  return paths;
}

/// True iff `p` occurs as a contiguous subsequence of `seq` (either
/// orientation).
inline bool occursContiguously(const std::vector<Vertex>& seq, const Path& p) {
  const auto& o = p.order;
  if (o.size() > seq.size()) return false;
  for (std::size_t t = 0; t + o.size() <= seq.size(); ++t) {
    bool fwd = true, rev = true;
    for (std::size_t i = 0; i < o.size() && (fwd || rev); ++i) {
      if (seq[t + i] != o[i]) fwd = false;
      if (seq[t + i] != o[o.size() - 1 - i]) rev = false;
    }
    if (fwd || rev) return true;
  }
  return false;
}

/// Occurrence check on a cyclic sequence (tours): doubles the sequence.
inline bool occursCyclically(const std::vector<Vertex>& cycle, const Path& p) {
  std::vector<Vertex> doubled(cycle);
  doubled.insert(doubled.end(), cycle.begin(), cycle.end());
  return occursContiguously(doubled, p);
}

}  // namespace recovtsp::testutil
