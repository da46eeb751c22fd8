#include "recovtsp/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <sstream>

namespace recovtsp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

/// Calls fn(order) for every canonical tour: order[0] = 0 and
/// order[1] < order[n-1], eliminating the 2n rotation/reflection symmetries.
template <class Fn>
void forEachCanonicalTour(int n, Fn&& fn) {
  std::vector<Vertex> rest(static_cast<std::size_t>(n - 1));
  std::iota(rest.begin(), rest.end(), 1);
  std::vector<Vertex> order(static_cast<std::size_t>(n));
  order[0] = 0;
  do {
    if (rest.front() > rest.back()) continue;
    std::copy(rest.begin(), rest.end(), order.begin() + 1);
    fn(order);
  } while (std::next_permutation(rest.begin(), rest.end()));
}

double eqTol(double scale) { return 1e-12 * std::max(1.0, std::fabs(scale)); }

}  // namespace

TspResult tspExhaustive(const DistanceMatrix& d) {
  const int n = d.size();
  if (n < 3) throw InputError("TSP needs n >= 3");
  if (n > 9) throw BudgetExceeded("tspExhaustive is limited to n <= 9");
  double best = kInf;
  std::vector<Vertex> bestOrder;
  forEachCanonicalTour(n, [&](const std::vector<Vertex>& order) {
    const double cost = tourCost(d, Tour(std::vector<Vertex>(order)));
    if (cost < best) {
      best = cost;
      bestOrder = order;
    }
  });
  Tour tour(std::move(bestOrder));
  return {tour, tourCost(d, tour)};
}

TspResult tspExact(const DistanceMatrix& d) {
  const int n = d.size();
  if (n < 3) throw InputError("TSP needs n >= 3");
  if (n > 15) throw BudgetExceeded("tspExact is limited to n <= 15 (bitmask DP)");

  // h[mask][j]: cheapest continuation from city j through exactly the cities
  // in mask (bit b is city b+1, j not in mask) and back to 0.
  const int cities = n - 1;
  const std::uint32_t full = (1u << cities) - 1;
  std::vector<std::vector<double>> h(full + 1, std::vector<double>(static_cast<std::size_t>(n), kInf));
  for (int j = 0; j < n; ++j) h[0][static_cast<std::size_t>(j)] = d(j, 0);
  for (std::uint32_t mask = 1; mask <= full; ++mask) {
    for (int j = 0; j < n; ++j) {
      if (j > 0 && (mask & (1u << (j - 1)))) continue;
      double best = kInf;
      for (int b = 0; b < cities; ++b) {
        if (!(mask & (1u << b))) continue;
        const int t = b + 1;
        const double c = d(j, t) + h[mask ^ (1u << b)][static_cast<std::size_t>(t)];
        if (c < best) best = c;
      }
      h[mask][static_cast<std::size_t>(j)] = best;
    }
  }

  // Greedy forward reconstruction picks the lexicographically smallest
  // optimal successor at every step; by symmetry of d this also lands in
  // canonical orientation.
  const double tol = eqTol(h[full][0]);
  std::vector<Vertex> order{0};
  std::uint32_t mask = full;
  int cur = 0;
  while (mask != 0) {
    for (int b = 0; b < cities; ++b) {
      if (!(mask & (1u << b))) continue;
      const int t = b + 1;
      if (d(cur, t) + h[mask ^ (1u << b)][static_cast<std::size_t>(t)] <=
          h[mask][static_cast<std::size_t>(cur)] + tol) {
        order.push_back(t);
        mask ^= 1u << b;
        cur = t;
        break;
      }
    }
  }
  if (order[1] > order.back()) std::reverse(order.begin() + 1, order.end());
  Tour tour(std::move(order));
  return {tour, tourCost(d, tour)};
}

RecovTspResult recovTspBruteforce(const Instance& inst) {
  const int n = inst.n();
  const int k = inst.stages();
  const bool inBudget = (k == 2 && n <= 8) || (k == 3 && n <= 6);
  if (!inBudget) {
    std::ostringstream msg;
    msg << "recovTspBruteforce budget is k=2 with n<=8 or k=3 with n<=6; got k=" << k
        << ", n=" << n;
    throw BudgetExceeded(msg.str());
  }

  // Precompute every canonical tour with its per-stage cost and edge bitmask
  // over the lexicographic edge list (at most C(8,2) = 28 bits).
  std::vector<std::vector<int>> edgeIndex(static_cast<std::size_t>(n),
                                          std::vector<int>(static_cast<std::size_t>(n), -1));
  {
    int next = 0;
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v) {
        edgeIndex[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] = next;
        edgeIndex[static_cast<std::size_t>(v)][static_cast<std::size_t>(u)] = next;
        ++next;
      }
  }
  struct TourRec {
    std::vector<Vertex> order;
    std::uint32_t mask;
    std::vector<double> cost;  // per stage
  };
  std::vector<TourRec> tours;
  forEachCanonicalTour(n, [&](const std::vector<Vertex>& order) {
    TourRec rec;
    rec.order = order;
    rec.mask = 0;
    for (std::size_t i = 0; i < order.size(); ++i) {
      const Vertex a = order[i], b = order[(i + 1) % order.size()];
      rec.mask |= 1u << edgeIndex[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
    }
    Tour t{std::vector<Vertex>(order)};
    for (int s = 0; s < k; ++s) rec.cost.push_back(tourCost(inst.metric(s), t));
    tours.push_back(std::move(rec));
  });

  const int q = inst.q();
  double best = kInf;
  std::vector<const TourRec*> pick(static_cast<std::size_t>(k), nullptr);
  std::vector<const TourRec*> bestPick;

  std::function<void(int, std::uint32_t, double)> rec = [&](int stage, std::uint32_t mask,
                                                            double value) {
    if (stage == k) {
      if (value < best) {
        best = value;
        bestPick.assign(pick.begin(), pick.end());
      }
      return;
    }
    for (const TourRec& t : tours) {
      const std::uint32_t next = stage == 0 ? t.mask : (mask & t.mask);
      if (std::popcount(next) < q) continue;
      if (value + t.cost[static_cast<std::size_t>(stage)] >= best) continue;
      pick[static_cast<std::size_t>(stage)] = &t;
      rec(stage + 1, next, value + t.cost[static_cast<std::size_t>(stage)]);
    }
  };
  rec(0, 0, 0.0);
  if (bestPick.empty()) throw InputError("no feasible tour tuple");  // unreachable for q <= n

  RecovTspResult out;
  double value = 0.0;
  for (int s = 0; s < k; ++s) {
    out.tours.emplace_back(std::vector<Vertex>(bestPick[static_cast<std::size_t>(s)]->order));
    value += bestPick[static_cast<std::size_t>(s)]->cost[static_cast<std::size_t>(s)];
  }
  out.value = value;
  return out;
}

HamiltonPathResult hamiltonPathExact(const DistanceMatrix& d,
                                     const std::vector<Vertex>& vertices) {
  if (vertices.empty()) throw InputError("hamiltonPathExact on an empty vertex set");
  if (vertices.size() > 12)
    throw BudgetExceeded("hamiltonPathExact is limited to 12 vertices (subset DP)");
  std::vector<Vertex> verts(vertices);
  std::sort(verts.begin(), verts.end());
  if (std::adjacent_find(verts.begin(), verts.end()) != verts.end())
    throw InputError("duplicate vertex in subset");
  for (Vertex v : verts)
    if (v < 0 || v >= d.size()) throw InputError("subset vertex out of range");

  const int l = static_cast<int>(verts.size());
  if (l == 1) return {Path{{verts[0]}}, 0.0};

  const std::uint32_t full = (1u << l) - 1;
  auto dist = [&](int a, int b) { return d(verts[static_cast<std::size_t>(a)], verts[static_cast<std::size_t>(b)]); };
  std::vector<std::vector<double>> dp(full + 1, std::vector<double>(static_cast<std::size_t>(l), kInf));
  for (int j = 0; j < l; ++j) dp[1u << j][static_cast<std::size_t>(j)] = 0.0;
  for (std::uint32_t mask = 1; mask <= full; ++mask)
    for (int j = 0; j < l; ++j) {
      if (!(mask & (1u << j))) continue;
      const double base = dp[mask][static_cast<std::size_t>(j)];
      if (base == kInf) continue;
      for (int t = 0; t < l; ++t) {
        if (mask & (1u << t)) continue;
        double& slot = dp[mask | (1u << t)][static_cast<std::size_t>(t)];
        const double c = base + dist(j, t);
        if (c < slot) slot = c;
      }
    }

  double best = kInf;
  int bestEnd = -1;
  for (int j = 0; j < l; ++j)
    if (dp[full][static_cast<std::size_t>(j)] < best) {
      best = dp[full][static_cast<std::size_t>(j)];
      bestEnd = j;
    }

  // Walk backwards through optimal predecessors (smallest index first).
  const double tol = eqTol(best);
  std::vector<int> local{bestEnd};
  std::uint32_t mask = full;
  int cur = bestEnd;
  while (std::popcount(mask) > 1) {
    const std::uint32_t prevMask = mask ^ (1u << cur);
    for (int t = 0; t < l; ++t) {
      if (!(prevMask & (1u << t))) continue;
      if (dp[prevMask][static_cast<std::size_t>(t)] + dist(t, cur) <=
          dp[mask][static_cast<std::size_t>(cur)] + tol) {
        local.push_back(t);
        mask = prevMask;
        cur = t;
        break;
      }
    }
  }
  Path path;
  for (int idx : local) path.order.push_back(verts[static_cast<std::size_t>(idx)]);
  if (path.order.front() > path.order.back())
    std::reverse(path.order.begin(), path.order.end());
  return {path, d.setCost(path.edgeSet())};
}

}  // namespace recovtsp
