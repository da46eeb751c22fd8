#include "recovtsp/core.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace recovtsp {

EdgeSet::EdgeSet(std::vector<Edge> edges) : edges_(std::move(edges)) {
  std::sort(edges_.begin(), edges_.end());
  if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end())
    throw InputError("duplicate edge in edge set");
}

bool EdgeSet::insert(const Edge& e) {
  auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
  if (it != edges_.end() && *it == e) return false;
  edges_.insert(it, e);
  return true;
}

bool EdgeSet::erase(const Edge& e) {
  auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
  if (it == edges_.end() || !(*it == e)) return false;
  edges_.erase(it);
  return true;
}

bool EdgeSet::contains(const Edge& e) const {
  return std::binary_search(edges_.begin(), edges_.end(), e);
}

Vertex EdgeSet::maxVertex() const {
  Vertex m = -1;
  for (const Edge& e : edges_) m = std::max(m, e.v);
  return m;
}

EdgeSet intersect(const EdgeSet& a, const EdgeSet& b) {
  std::vector<Edge> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return EdgeSet(std::move(out));
}

EdgeSet unite(const EdgeSet& a, const EdgeSet& b) {
  std::vector<Edge> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return EdgeSet(std::move(out));
}

EdgeSet difference(const EdgeSet& a, const EdgeSet& b) {
  std::vector<Edge> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return EdgeSet(std::move(out));
}

DistanceMatrix::DistanceMatrix(int n) : n_(n) {
  if (n < 1) throw InputError("distance matrix needs n >= 1");
  d_.assign(static_cast<std::size_t>(n) * n, 0.0);
}

DistanceMatrix DistanceMatrix::fromRows(const std::vector<std::vector<double>>& rows) {
  const int n = static_cast<int>(rows.size());
  if (n < 1) throw InputError("distance matrix needs n >= 1");
  DistanceMatrix d(n);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(rows[static_cast<std::size_t>(i)].size()) != n) {
      std::ostringstream msg;
      msg << "distance matrix is not square: row " << i << " has "
          << rows[static_cast<std::size_t>(i)].size() << " entries, expected " << n;
      throw InputError(msg.str());
    }
    for (int j = 0; j < n; ++j) {
      const double w = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      if (!std::isfinite(w)) {
        std::ostringstream msg;
        msg << "distance matrix entry (" << i << "," << j << ") is not finite";
        throw InputError(msg.str());
      }
      d.d_[static_cast<std::size_t>(i) * n + j] = w;
    }
  }
  return d;
}

void DistanceMatrix::set(Vertex u, Vertex v, double w) {
  d_[static_cast<std::size_t>(u) * n_ + v] = w;
  d_[static_cast<std::size_t>(v) * n_ + u] = w;
}

double DistanceMatrix::setCost(const EdgeSet& s) const {
  double total = 0.0;
  for (const Edge& e : s) total += edgeCost(e);
  return total;
}

DistanceMatrix combineMetrics(const DistanceMatrix& a, const DistanceMatrix& b) {
  if (a.size() != b.size()) throw InputError("metrics to combine have different sizes");
  DistanceMatrix c(a.size());
  for (std::size_t i = 0; i < c.d_.size(); ++i) c.d_[i] = a.d_[i] + b.d_[i];
  return c;
}

MetricReport validateMetric(const DistanceMatrix& d) {
  MetricReport report;
  const int n = d.size();
  for (int i = 0; i < n; ++i) {
    if (d(i, i) != 0.0) report.zeroDiagonal = false;
    for (int j = 0; j < n; ++j) {
      if (d(i, j) < 0.0) report.nonnegative = false;
      if (d(i, j) != d(j, i)) report.symmetric = false;
    }
  }
  // Endpoint pairs u < w with every intermediate v; for symmetric matrices
  // this covers all triples once. Asymmetry is already flagged above.
  for (int u = 0; u < n; ++u)
    for (int w = u + 1; w < n; ++w)
      for (int v = 0; v < n; ++v) {
        if (v == u || v == w) continue;
        const double slack = d(u, w) - d(u, v) - d(v, w);
        if (slack > kRelTol * std::max(1.0, d(u, w)))
          report.violations.push_back({u, v, w, slack});
      }
  return report;
}

Tour::Tour(std::vector<Vertex> order) : order_(std::move(order)) {
  const int n = static_cast<int>(order_.size());
  if (n < 3) throw InputError("a tour needs n >= 3 vertices");
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  for (Vertex v : order_) {
    if (v < 0 || v >= n) throw InputError("tour vertex out of range");
    if (seen[static_cast<std::size_t>(v)]) throw InputError("tour repeats a vertex");
    seen[static_cast<std::size_t>(v)] = true;
  }
}

Tour Tour::reversed() const {
  std::vector<Vertex> rev(order_.rbegin(), order_.rend());
  return Tour(std::move(rev));
}

EdgeSet tourEdges(const Tour& c) {
  const auto& o = c.order();
  EdgeSet s;
  for (std::size_t i = 0; i < o.size(); ++i)
    s.insert(Edge(o[i], o[(i + 1) % o.size()]));
  return s;
}

double tourCost(const DistanceMatrix& d, const Tour& c) {
  if (d.size() != c.size()) throw InputError("tour and distance matrix sizes differ");
  return d.setCost(tourEdges(c));
}

EdgeSet mutualIntersection(std::span<const EdgeSet> sets) {
  if (sets.empty()) throw InputError("mutual intersection of an empty list");
  EdgeSet acc = sets[0];
  for (std::size_t i = 1; i < sets.size(); ++i) acc = intersect(acc, sets[i]);
  return acc;
}

Instance::Instance(std::vector<DistanceMatrix> metrics, int q)
    : q_(q), metrics_(std::move(metrics)) {
  if (metrics_.size() < 2) throw InputError("an instance needs k >= 2 metrics");
  n_ = metrics_[0].size();
  for (const auto& m : metrics_)
    if (m.size() != n_) throw InputError("all metrics must share the same vertex count");
  if (n_ < 3) throw InputError("an instance needs n >= 3 vertices");
  if (q_ < 0) throw InputError("q must be nonnegative");
  if (q_ > n_) throw InputError("infeasible instance: q exceeds n (no tours share more than n edges)");
}

namespace {

FeasibilityVerdict checkTours(const Instance& inst,
                              const std::vector<const std::vector<Vertex>*>& tours) {
  FeasibilityVerdict verdict;
  std::ostringstream msg;
  if (static_cast<int>(tours.size()) != inst.stages()) {
    msg << "expected " << inst.stages() << " tours, got " << tours.size();
    verdict.violations.push_back(msg.str());
    return verdict;
  }
  std::vector<EdgeSet> edgeSets;
  for (std::size_t t = 0; t < tours.size(); ++t) {
    const auto& order = *tours[t];
    bool ok = static_cast<int>(order.size()) == inst.n();
    if (ok) {
      std::vector<bool> seen(order.size(), false);
      for (Vertex v : order) {
        if (v < 0 || v >= inst.n() || seen[static_cast<std::size_t>(v)]) {
          ok = false;
          break;
        }
        seen[static_cast<std::size_t>(v)] = true;
      }
    }
    if (!ok) {
      std::ostringstream m;
      m << "tour " << t << " is not a Hamiltonian cycle on " << inst.n() << " vertices";
      verdict.violations.push_back(m.str());
      continue;
    }
    EdgeSet s;
    for (std::size_t i = 0; i < order.size(); ++i)
      s.insert(Edge(order[i], order[(i + 1) % order.size()]));
    edgeSets.push_back(std::move(s));
  }
  if (!verdict.violations.empty()) return verdict;
  EdgeSet inter = mutualIntersection(edgeSets);
  verdict.intersectionSize = static_cast<int>(inter.size());
  if (verdict.intersectionSize < inst.q()) {
    std::ostringstream m;
    m << "intersection has " << verdict.intersectionSize << " edges, needs " << inst.q()
      << " (deficit " << inst.q() - verdict.intersectionSize << ")";
    verdict.violations.push_back(m.str());
  }
  verdict.feasible = verdict.violations.empty();
  return verdict;
}

}  // namespace

FeasibilityVerdict checkSolution(const Instance& inst, std::span<const Tour> tours) {
  std::vector<const std::vector<Vertex>*> raw;
  raw.reserve(tours.size());
  for (const Tour& t : tours) raw.push_back(&t.order());
  return checkTours(inst, raw);
}

FeasibilityVerdict checkSolutionRaw(const Instance& inst,
                                    const std::vector<std::vector<Vertex>>& tours) {
  std::vector<const std::vector<Vertex>*> raw;
  raw.reserve(tours.size());
  for (const auto& t : tours) raw.push_back(&t);
  return checkTours(inst, raw);
}

}  // namespace recovtsp
