#include "recovtsp/approx.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace recovtsp {

namespace {

std::vector<Vertex> allVertices(int n) {
  std::vector<Vertex> v(static_cast<std::size_t>(n));
  std::iota(v.begin(), v.end(), 0);
  return v;
}

void requireMetrics(const Instance& inst, bool force) {
  if (force) return;
  for (int s = 0; s < inst.stages(); ++s) {
    MetricReport report = validateMetric(inst.metric(s));
    if (!report.metric()) {
      std::ostringstream msg;
      msg << "stage " << s << " is not a metric (";
      if (!report.symmetric) msg << "asymmetric; ";
      if (!report.nonnegative) msg << "negative entries; ";
      if (!report.zeroDiagonal) msg << "nonzero diagonal; ";
      if (!report.violations.empty())
        msg << report.violations.size() << " triangle violations; ";
      msg << "); the approximation guarantee is undefined -- "
             "pass the force-nonmetric flag to run anyway";
      throw InputError(msg.str());
    }
  }
}

double binomialEstimate(int m, int q) {
  double r = 1.0;
  for (int i = 0; i < q; ++i) r = r * (m - i) / (i + 1);
  return r;
}

}  // namespace

void CertificateChain::verify(const Instance& inst) const {
  const int k = inst.stages();
  if (static_cast<int>(tours.size()) != k || static_cast<int>(walks.size()) != k ||
      static_cast<int>(substitutedTrees.size()) != k)
    throw CertificateViolation("certificate chain is missing stages");

  double tourSum = 0, walkSum = 0, treeSum = 0;
  for (int s = 0; s < k; ++s) {
    tourSum += tourCost(inst.metric(s), tours[static_cast<std::size_t>(s)]);
    walkSum += walks[static_cast<std::size_t>(s)].cost(inst.metric(s));
    treeSum += inst.metric(s).setCost(substitutedTrees[static_cast<std::size_t>(s)]);
  }
  const double stSum = inst.metric(0).setCost(treePair.t1) + inst.metric(1).setCost(treePair.t2);

  if (!approxLeq(tourSum, walkSum))
    throw CertificateViolation("chain violated: sum d_i(C_i) > sum d_i(W''_i)");
  if (!approxLeq(walkSum, 2.0 * treeSum))
    throw CertificateViolation("chain violated: sum d_i(W''_i) > 2 sum d_i(T'_i)");
  if (!approxLeq(2.0 * treeSum, 4.0 * stSum))
    throw CertificateViolation("chain violated: 2 sum d_i(T'_i) > 4 sum d_i(T_i)");

  FeasibilityVerdict verdict = checkSolution(inst, tours);
  if (!verdict.feasible)
    throw CertificateViolation("chain violated: output tours are infeasible: " +
                               verdict.violations.front());

  // Every forced path must survive into every tour, and their edge union
  // accounts for the required intersection.
  std::size_t pathEdges = 0;
  for (const Path& p : paths) {
    pathEdges += p.length();
    for (const Tour& c : tours) {
      EdgeSet tourSet = tourEdges(c);
      for (const Edge& e : p.edgeSet())
        if (!tourSet.contains(e))
          throw CertificateViolation("chain violated: a forced path edge is missing from a tour");
    }
  }
  if (inst.q() < inst.n() && static_cast<int>(pathEdges) < inst.q())
    throw CertificateViolation("chain violated: forced paths carry fewer than q edges");
}

Approx4Result solveApprox4(const Instance& inst, const Approx4Options& opts) {
  if (inst.stages() != 2)
    throw InputError("solveApprox4 handles exactly two stages; use solveEnum2 for k > 2");
  requireMetrics(inst, opts.forceNonmetric);

  const int n = inst.n();
  const int q = inst.q();
  const DistanceMatrix& d1 = inst.metric(0);
  const DistanceMatrix& d2 = inst.metric(1);

  Approx4Result result;
  result.guarantee = opts.forceNonmetric ? "heuristic" : "4-approx";
  CertificateChain& chain = result.chain;

  if (q == n) {
    // Every tour pair with full intersection is two copies of one tour, i.e.
    // the classical TSP under d1+d2; the double-tree heuristic gives factor 2.
    const DistanceMatrix combined = combineMetrics(d1, d2);
    EdgeSet tree = mstForced(combined, allVertices(n), EdgeSet{});
    ClosedWalk walk = eulerWithForcedPaths(n, tree, {}, opts.policy);
    Tour tour = shortcutPreservingPaths(walk, {}, combined);

    chain.treePair.t1 = tree;
    chain.treePair.t2 = tree;
    chain.treePair.intersection = tree;
    chain.treePair.value = d1.setCost(tree) + d2.setCost(tree);
    chain.treePair.optimal = false;
    chain.substitutedTrees = {tree, tree};
    chain.paths = {};
    chain.walks = {walk, walk};
    chain.tours = {tour, tour};
    if (!opts.forceNonmetric) result.guarantee = "2-approx";
  } else {
    TreePair st;
    try {
      RecovStOptions stOpts;
      stOpts.workBudget = opts.stBudget;
      stOpts.incumbentHint = opts.stIncumbentHint;
      st = recovStExact(d1, d2, q, stOpts);
    } catch (const BudgetExceeded&) {
      if (opts.onStBudget == BudgetFallback::Throw) throw;
      st = recovStHeuristic(d1, d2, q);
      result.guarantee = "heuristic";
    }

    const std::vector<Component> comps = components(st.intersection);
    const DistanceMatrix combined = combineMetrics(d1, d2);
    std::vector<Path> paths;
    paths.reserve(comps.size());
    for (const Component& c : comps)
      paths.push_back(doubleTreeHamiltonPath(c, combined, opts.policy));

    EdgeSet t1p = substituteComponents(st.t1, comps, paths);
    EdgeSet t2p = substituteComponents(st.t2, comps, paths);
    ClosedWalk w1 = eulerWithForcedPaths(n, t1p, paths, opts.policy);
    ClosedWalk w2 = eulerWithForcedPaths(n, t2p, paths, opts.policy);
    Tour c1 = shortcutPreservingPaths(w1, paths, d1);
    Tour c2 = shortcutPreservingPaths(w2, paths, d2);

    chain.treePair = std::move(st);
    chain.substitutedTrees = {std::move(t1p), std::move(t2p)};
    chain.paths = std::move(paths);
    chain.walks = {std::move(w1), std::move(w2)};
    chain.tours = {std::move(c1), std::move(c2)};
  }

  chain.stageCosts.tours =
      tourCost(d1, chain.tours[0]) + tourCost(d2, chain.tours[1]);
  chain.stageCosts.walks = chain.walks[0].cost(d1) + chain.walks[1].cost(d2);
  chain.stageCosts.treesTwice =
      2.0 * (d1.setCost(chain.substitutedTrees[0]) + d2.setCost(chain.substitutedTrees[1]));
  chain.stageCosts.stFour = 4.0 * chain.treePair.value;

  result.tours = chain.tours;
  result.value = chain.stageCosts.tours;
  if (opts.verifyCertificate) chain.verify(inst);
  return result;
}

void enumerateVertexDisjointPathSets(
    int n, int q, std::uint64_t candidateBudget,
    const std::function<bool(const std::vector<Path>&, const EdgeSet&)>& visit) {
  if (n < 1) throw InputError("vertex count must be positive");
  if (q < 0) throw InputError("q must be nonnegative");
  const int m = n * (n - 1) / 2;
  if (q > m) throw InputError("q exceeds the number of edges of K_n");

  const double estimate = binomialEstimate(m, q);
  if (estimate > static_cast<double>(candidateBudget)) {
    std::ostringstream msg;
    msg << "path-set enumeration refused: about " << estimate
        << " candidate edge subsets (C(" << m << "," << q << ")) exceed the budget of "
        << candidateBudget;
    throw BudgetExceeded(msg.str());
  }

  std::vector<Edge> edges;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) edges.emplace_back(u, v);

  std::vector<int> degree(static_cast<std::size_t>(n), 0);
  // endpointPartner[v]: for a path endpoint v, the other endpoint of its
  // path; adding {u,v} with partner[u] == v would close a cycle.
  std::vector<Vertex> partner(static_cast<std::size_t>(n));
  std::iota(partner.begin(), partner.end(), 0);
  std::vector<Edge> chosen;
  chosen.reserve(static_cast<std::size_t>(q));
  bool keepGoing = true;

  auto emit = [&]() {
    EdgeSet set{std::vector<Edge>(chosen)};
    // Group into maximal paths, each oriented from its smaller endpoint.
    std::vector<std::vector<Vertex>> adj(static_cast<std::size_t>(n));
    for (const Edge& e : set) {
      adj[static_cast<std::size_t>(e.u)].push_back(e.v);
      adj[static_cast<std::size_t>(e.v)].push_back(e.u);
    }
    std::vector<Path> paths;
    std::vector<bool> used(static_cast<std::size_t>(n), false);
    for (int v = 0; v < n; ++v) {
      if (used[static_cast<std::size_t>(v)] || adj[static_cast<std::size_t>(v)].size() != 1)
        continue;
      Path p;
      Vertex cur = v, prev = -1;
      while (true) {
        p.order.push_back(cur);
        used[static_cast<std::size_t>(cur)] = true;
        Vertex next = -1;
        for (Vertex w : adj[static_cast<std::size_t>(cur)])
          if (w != prev) next = w;
        if (next < 0) break;
        prev = cur;
        cur = next;
      }
      if (p.order.front() > p.order.back())
        std::reverse(p.order.begin(), p.order.end());
      paths.push_back(std::move(p));
    }
    std::sort(paths.begin(), paths.end(),
              [](const Path& a, const Path& b) { return a.order.front() < b.order.front(); });
    keepGoing = visit(paths, set);
  };

  std::function<void(std::size_t)> dfs = [&](std::size_t startIdx) {
    if (!keepGoing) return;
    if (static_cast<int>(chosen.size()) == q) {
      emit();
      return;
    }
    for (std::size_t idx = startIdx; idx < edges.size() && keepGoing; ++idx) {
      if (edges.size() - idx < static_cast<std::size_t>(q) - chosen.size()) break;
      const Edge& e = edges[idx];
      if (degree[static_cast<std::size_t>(e.u)] >= 2 || degree[static_cast<std::size_t>(e.v)] >= 2)
        continue;
      if (partner[static_cast<std::size_t>(e.u)] == e.v) continue;  // would close a cycle
      // Joining the paths ending at u and v: the far endpoints pu, pv become
      // partners. Before the join, partner[pu] == u and partner[pv] == v,
      // which is all the rollback needs to restore.
      const Vertex pu = partner[static_cast<std::size_t>(e.u)];
      const Vertex pv = partner[static_cast<std::size_t>(e.v)];
      ++degree[static_cast<std::size_t>(e.u)];
      ++degree[static_cast<std::size_t>(e.v)];
      partner[static_cast<std::size_t>(pu)] = pv;
      partner[static_cast<std::size_t>(pv)] = pu;
      chosen.push_back(e);
      dfs(idx + 1);
      chosen.pop_back();
      partner[static_cast<std::size_t>(pu)] = e.u;
      partner[static_cast<std::size_t>(pv)] = e.v;
      --degree[static_cast<std::size_t>(e.u)];
      --degree[static_cast<std::size_t>(e.v)];
    }
  };
  dfs(0);
}

namespace {

/// Enumeration loop of solveEnum2, separated so the refusal can carry a
/// k-specific suggestion.
void enum2Candidates(const Instance& inst, const Enum2Options& opts, Enum2Result& best) {
  const int n = inst.n();
  const int q = inst.q();
  const int k = inst.stages();
  enumerateVertexDisjointPathSets(
      n, q, opts.candidateBudget, [&](const std::vector<Path>& paths, const EdgeSet& forced) {
        ++best.candidates;
        std::vector<EdgeSet> trees;
        trees.reserve(static_cast<std::size_t>(k));
        double bound = 0.0;
        for (int s = 0; s < k; ++s) {
          trees.push_back(mstForced(inst.metric(s), allVertices(n), forced));
          bound += inst.metric(s).setCost(trees.back());
        }
        best.minTreeBound = std::min(best.minTreeBound, bound);
        // Tour costs dominate the forced-MST bound, so this candidate cannot
        // beat the incumbent if its bound already fails to.
        const bool haveIncumbent = std::isfinite(best.value);
        const double tol =
            haveIncumbent ? 1e-12 * std::max(1.0, std::fabs(best.value)) : 0.0;
        if (haveIncumbent && bound >= best.value - tol) return true;

        std::vector<Tour> tours;
        double value = 0.0;
        for (int s = 0; s < k; ++s) {
          ClosedWalk walk = eulerWithForcedPaths(n, trees[static_cast<std::size_t>(s)], paths,
                                                 opts.policy);
          tours.push_back(shortcutPreservingPaths(walk, paths, inst.metric(s)));
          value += tourCost(inst.metric(s), tours.back());
        }
        if (!haveIncumbent || value < best.value - tol) {
          best.value = value;
          best.tours = std::move(tours);
          best.paths = paths;
          best.forcedEdges = forced;
          best.trees = std::move(trees);
          best.treeBound = bound;
        }
        return true;
      });
}

}  // namespace

Enum2Result solveEnum2(const Instance& inst, const Enum2Options& opts) {
  requireMetrics(inst, opts.forceNonmetric);
  const int n = inst.n();
  const int q = inst.q();
  const int k = inst.stages();

  Enum2Result best;
  best.guarantee = opts.forceNonmetric ? "heuristic" : "2-approx";
  best.value = std::numeric_limits<double>::infinity();
  best.minTreeBound = std::numeric_limits<double>::infinity();

  if (q == n) {
    // Full intersection forces all tours equal: classical TSP under the sum
    // metric, double-tree heuristic.
    DistanceMatrix combined = inst.metric(0);
    for (int s = 1; s < k; ++s) combined = combineMetrics(combined, inst.metric(s));
    EdgeSet tree = mstForced(combined, allVertices(n), EdgeSet{});
    ClosedWalk walk = eulerWithForcedPaths(n, tree, {}, opts.policy);
    Tour tour = shortcutPreservingPaths(walk, {}, combined);
    best.tours.assign(static_cast<std::size_t>(k), tour);
    best.trees.assign(static_cast<std::size_t>(k), tree);
    best.treeBound = combined.setCost(tree);
    best.minTreeBound = best.treeBound;
    best.value = 0.0;
    for (int s = 0; s < k; ++s) best.value += tourCost(inst.metric(s), tour);
    best.candidates = 1;
    return best;
  }

  try {
    enum2Candidates(inst, opts, best);
  } catch (const BudgetExceeded& err) {
    throw BudgetExceeded(std::string(err.what()) +
                         (k == 2 ? "; solveApprox4 handles arbitrary q for two stages" : ""));
  }
  if (!std::isfinite(best.value))
    throw BudgetExceeded("solveEnum2 found no candidate within budget");

  if (opts.verifyCertificate) {
    FeasibilityVerdict verdict = checkSolution(inst, best.tours);
    if (!verdict.feasible)
      throw CertificateViolation("enum2 output is infeasible: " + verdict.violations.front());
    if (!approxLeq(best.value, 2.0 * best.treeBound))
      throw CertificateViolation("enum2 chain violated: value > 2 sum d_i(T'_i)");
    for (const Tour& c : best.tours) {
      EdgeSet es = tourEdges(c);
      for (const Edge& e : best.forcedEdges)
        if (!es.contains(e))
          throw CertificateViolation("enum2 chain violated: forced edge missing from a tour");
    }
  }
  return best;
}

}  // namespace recovtsp
