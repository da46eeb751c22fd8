#include "recovtsp/recov_st.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <numeric>
#include <sstream>

namespace recovtsp {

namespace {

struct CandidateEdge {
  double w;
  Edge e;
};

std::vector<CandidateEdge> sortedEdges(const DistanceMatrix& d,
                                       const DistanceMatrix* second = nullptr) {
  std::vector<CandidateEdge> out;
  const int n = d.size();
  out.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) {
      Edge e(u, v);
      out.push_back({d.edgeCost(e) + (second ? second->edgeCost(e) : 0.0), e});
    }
  std::stable_sort(out.begin(), out.end(), [](const CandidateEdge& a, const CandidateEdge& b) {
    if (a.w != b.w) return a.w < b.w;
    return a.e < b.e;
  });
  return out;
}

/// Kruskal over a presorted edge list with a forced forest; scratch parent
/// array is reused across branch-and-bound nodes.
EdgeSet kruskalPresorted(int n, const std::vector<CandidateEdge>& presorted,
                         const std::vector<Edge>& forced, std::vector<int>& parent) {
  parent.resize(static_cast<std::size_t>(n));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] = parent[parent[static_cast<std::size_t>(x)]];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  };
  std::vector<Edge> tree;
  tree.reserve(static_cast<std::size_t>(n - 1));
  for (const Edge& e : forced) {
    int ru = find(e.u), rv = find(e.v);
    if (ru == rv) throw InputError("forced edge set contains a cycle");
    parent[static_cast<std::size_t>(ru)] = rv;
    tree.push_back(e);
  }
  for (const CandidateEdge& c : presorted) {
    if (static_cast<int>(tree.size()) == n - 1) break;
    int ru = find(c.e.u), rv = find(c.e.v);
    if (ru == rv) continue;
    parent[static_cast<std::size_t>(ru)] = rv;
    tree.push_back(c.e);
  }
  return EdgeSet(std::move(tree));
}

void validateInputs(const DistanceMatrix& d1, const DistanceMatrix& d2, int q) {
  if (d1.size() != d2.size()) throw InputError("stage metrics have different sizes");
  if (q < 0) throw InputError("q must be nonnegative");
  if (q > d1.size() - 1) {
    std::ostringstream msg;
    msg << "infeasible: q = " << q << " exceeds n-1 = " << d1.size() - 1
        << " (a spanning tree has n-1 edges)";
    throw InputError(msg.str());
  }
}

std::vector<Vertex> allVertices(int n) {
  std::vector<Vertex> v(static_cast<std::size_t>(n));
  std::iota(v.begin(), v.end(), 0);
  return v;
}

double pairValue(const DistanceMatrix& d1, const DistanceMatrix& d2, const EdgeSet& t1,
                 const EdgeSet& t2) {
  return d1.setCost(t1) + d2.setCost(t2);
}

}  // namespace

TreePair recovStHeuristic(const DistanceMatrix& d1, const DistanceMatrix& d2, int q) {
  validateInputs(d1, d2, q);
  const int n = d1.size();
  EdgeSet t1 = mstForced(d1, allVertices(n), EdgeSet{});

  // Any subset of a tree is a forest, so the q edges of T1 cheapest under d2
  // can be forced directly.
  std::vector<Edge> byD2(t1.edges());
  std::stable_sort(byD2.begin(), byD2.end(), [&](const Edge& a, const Edge& b) {
    if (d2.edgeCost(a) != d2.edgeCost(b)) return d2.edgeCost(a) < d2.edgeCost(b);
    return a < b;
  });
  byD2.erase(byD2.begin() + q, byD2.end());
  EdgeSet t2 = mstForced(d2, allVertices(n), EdgeSet(std::move(byD2)));

  TreePair out;
  out.t1 = std::move(t1);
  out.t2 = std::move(t2);
  out.intersection = intersect(out.t1, out.t2);
  out.value = pairValue(d1, d2, out.t1, out.t2);
  out.optimal = (q == 0);  // with no constraint the two MSTs are exact
  return out;
}

TreePair recovStExact(const DistanceMatrix& d1, const DistanceMatrix& d2, int q,
                      const RecovStOptions& opts) {
  validateInputs(d1, d2, q);
  const int n = d1.size();

  TreePair incumbent;
  if (opts.incumbentHint) {
    incumbent = *opts.incumbentHint;
    for (const EdgeSet* t : {&incumbent.t1, &incumbent.t2}) {
      if (static_cast<int>(t->size()) != n - 1)
        throw InputError("incumbent hint trees do not span the vertex set");
      std::vector<int> parent(static_cast<std::size_t>(n));
      std::iota(parent.begin(), parent.end(), 0);
      auto find = [&](int x) {
        while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)];
        return x;
      };
      for (const Edge& e : *t) {
        if (e.v >= n) throw InputError("incumbent hint edge out of range");
        int ru = find(e.u), rv = find(e.v);
        if (ru == rv) throw InputError("incumbent hint tree contains a cycle");
        parent[static_cast<std::size_t>(ru)] = rv;
      }
    }
    incumbent.intersection = intersect(incumbent.t1, incumbent.t2);
    if (static_cast<int>(incumbent.intersection.size()) < q)
      throw InputError("incumbent hint is infeasible for q");
    incumbent.value = pairValue(d1, d2, incumbent.t1, incumbent.t2);
    incumbent.fromIncumbentHint = true;
  } else {
    incumbent = recovStHeuristic(d1, d2, q);
  }

  const auto byCombined = sortedEdges(d1, &d2);
  const auto byD1 = sortedEdges(d1);
  const auto byD2 = sortedEdges(d2);
  std::vector<int> parentScratch;
  std::vector<Edge> forest;
  forest.reserve(static_cast<std::size_t>(q));

  // Path-structure bookkeeping not needed; a forest only needs acyclicity.
  std::vector<int> dsu(static_cast<std::size_t>(n));
  auto rootOf = [&](int x) {
    while (dsu[static_cast<std::size_t>(x)] != x) x = dsu[static_cast<std::size_t>(x)];
    return x;
  };

  std::uint64_t nodes = 0;
  std::uint64_t work = 0;
  const std::uint64_t workPerNode = 2ULL * byCombined.size();
  bool improved = false;
  const double tol = [&] {
    return 1e-12 * std::max(1.0, std::fabs(incumbent.value));
  }();

  auto bound = [&](double& outBound, EdgeSet& outT1, EdgeSet& outT2) {
    outT1 = kruskalPresorted(n, byD1, forest, parentScratch);
    outT2 = kruskalPresorted(n, byD2, forest, parentScratch);
    outBound = pairValue(d1, d2, outT1, outT2);
  };

  std::function<void(std::size_t)> dfs = [&](std::size_t startIdx) {
    ++nodes;
    work += workPerNode;
    if (work > opts.workBudget)
      throw BudgetExceeded("recovStExact exceeded its work budget; use the heuristic fallback");
    double b;
    EdgeSet t1, t2;
    bound(b, t1, t2);
    if (b >= incumbent.value - tol) return;  // cannot strictly improve below here
    if (static_cast<int>(forest.size()) == q) {
      incumbent.t1 = std::move(t1);
      incumbent.t2 = std::move(t2);
      incumbent.value = b;
      incumbent.intersection = intersect(incumbent.t1, incumbent.t2);
      incumbent.fromIncumbentHint = false;
      improved = true;
      return;
    }
    for (std::size_t idx = startIdx; idx < byCombined.size(); ++idx) {
      if (byCombined.size() - idx < static_cast<std::size_t>(q) - forest.size()) break;
      const Edge& e = byCombined[idx].e;
      int ru = rootOf(e.u), rv = rootOf(e.v);
      if (ru == rv) continue;
      dsu[static_cast<std::size_t>(ru)] = rv;
      forest.push_back(e);
      dfs(idx + 1);
      forest.pop_back();
      dsu[static_cast<std::size_t>(ru)] = ru;
    }
  };

  std::iota(dsu.begin(), dsu.end(), 0);
  dfs(0);

  incumbent.optimal = true;
  incumbent.nodesExplored = nodes;
  if (improved) incumbent.fromIncumbentHint = false;
  return incumbent;
}

TreePair recovStBruteforce(const DistanceMatrix& d1, const DistanceMatrix& d2, int q) {
  validateInputs(d1, d2, q);
  const int n = d1.size();
  if (n > 6)
    throw BudgetExceeded("recovStBruteforce is limited to n <= 6 (tree-pair enumeration)");

  // All spanning trees as bitmasks over the lexicographic edge list.
  std::vector<Edge> edges;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) edges.emplace_back(u, v);
  const int m = static_cast<int>(edges.size());

  struct TreeRec {
    std::uint32_t mask;
    double cost1, cost2;
    EdgeSet set;
  };
  std::vector<TreeRec> trees;
  std::vector<int> pick(static_cast<std::size_t>(n - 1));
  std::function<void(int, int)> gen = [&](int start, int depth) {
    if (depth == n - 1) {
      std::vector<Edge> chosen;
      std::uint32_t mask = 0;
      for (int i : pick) {
        chosen.push_back(edges[static_cast<std::size_t>(i)]);
        mask |= 1u << i;
      }
      std::vector<int> parent(static_cast<std::size_t>(n));
      std::iota(parent.begin(), parent.end(), 0);
      auto find = [&](int x) {
        while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)];
        return x;
      };
      for (const Edge& e : chosen) {
        int ru = find(e.u), rv = find(e.v);
        if (ru == rv) return;
        parent[static_cast<std::size_t>(ru)] = rv;
      }
      EdgeSet set((std::vector<Edge>(chosen)));
      trees.push_back({mask, d1.setCost(set), d2.setCost(set), std::move(set)});
      return;
    }
    for (int i = start; i <= m - (n - 1 - depth); ++i) {
      pick[static_cast<std::size_t>(depth)] = i;
      gen(i + 1, depth + 1);
    }
  };
  gen(0, 0);

  const TreeRec* best1 = nullptr;
  const TreeRec* best2 = nullptr;
  double bestValue = 0.0;
  for (const TreeRec& a : trees)
    for (const TreeRec& b : trees) {
      if (std::popcount(a.mask & b.mask) < q) continue;
      const double value = a.cost1 + b.cost2;
      if (!best1 || value < bestValue) {
        best1 = &a;
        best2 = &b;
        bestValue = value;
      }
    }
  if (!best1) throw InputError("no feasible tree pair");  // unreachable for q <= n-1

  TreePair out;
  out.t1 = best1->set;
  out.t2 = best2->set;
  out.value = bestValue;
  out.intersection = intersect(out.t1, out.t2);
  out.optimal = true;
  return out;
}

}  // namespace recovtsp
