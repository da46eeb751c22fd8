#pragma once

#include <cmath>
#include <compare>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace recovtsp {

using Vertex = int;

/// Bad caller input: malformed matrices, infeasible parameters, violated
/// preconditions. Maps to CLI exit code 1.
struct InputError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// A solver refused because the instance exceeds its stated work budget.
/// Budgets are refusals, never silent truncations. CLI exit code 1.
struct BudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// An internal certificate (proof-chain inequality, feasibility of a produced
/// solution) failed to verify. Never returned silently; CLI exit code 2.
struct CertificateViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Relative tolerance used for all inequality certificates.
inline constexpr double kRelTol = 1e-9;

/// a <= b up to relative tolerance `rel`.
inline bool approxLeq(double a, double b, double rel = kRelTol) {
  return a <= b + rel * std::max({1.0, std::fabs(a), std::fabs(b)});
}

/// Undirected edge, stored with u < v.
struct Edge {
  Vertex u, v;

  Edge(Vertex a, Vertex b) : u(a < b ? a : b), v(a < b ? b : a) {
    if (a == b) throw InputError("edge endpoints must differ");
    if (a < 0 || b < 0) throw InputError("edge endpoints must be nonnegative");
  }

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Set of undirected edges, kept sorted and duplicate-free.
class EdgeSet {
public:
  EdgeSet() = default;
  explicit EdgeSet(std::vector<Edge> edges);

  /// Returns false if the edge was already present.
  bool insert(const Edge& e);
  bool erase(const Edge& e);
  bool contains(const Edge& e) const;

  std::size_t size() const { return edges_.size(); }
  bool empty() const { return edges_.empty(); }
  auto begin() const { return edges_.begin(); }
  auto end() const { return edges_.end(); }
  const std::vector<Edge>& edges() const { return edges_; }
  Vertex maxVertex() const;

  friend bool operator==(const EdgeSet&, const EdgeSet&) = default;

private:
  std::vector<Edge> edges_;
};

EdgeSet intersect(const EdgeSet& a, const EdgeSet& b);
EdgeSet unite(const EdgeSet& a, const EdgeSet& b);
EdgeSet difference(const EdgeSet& a, const EdgeSet& b);

/// Symmetric nonnegative pairwise distances with zero diagonal. Construction
/// only checks shape and finiteness; metric properties are reported by
/// validateMetric.
class DistanceMatrix {
public:
  explicit DistanceMatrix(int n);
  static DistanceMatrix fromRows(const std::vector<std::vector<double>>& rows);

  int size() const { return n_; }
  double operator()(Vertex u, Vertex v) const { return d_[static_cast<std::size_t>(u) * n_ + v]; }
  /// Sets both (u,v) and (v,u).
  void set(Vertex u, Vertex v, double w);

  double edgeCost(const Edge& e) const { return (*this)(e.u, e.v); }
  /// Canonical cost of an edge set: summed in sorted edge order, so equal
  /// sets always produce bit-identical totals.
  double setCost(const EdgeSet& s) const;

  friend DistanceMatrix combineMetrics(const DistanceMatrix& a, const DistanceMatrix& b);

private:
  int n_ = 0;
  std::vector<double> d_;
};

/// Entrywise sum d1 + d2 (the metric Algorithm 1 hands to the per-component
/// double-tree step).
DistanceMatrix combineMetrics(const DistanceMatrix& a, const DistanceMatrix& b);

struct TriangleViolation {
  Vertex u, v, w;  // d(u,w) > d(u,v) + d(v,w)
  double slack;    // d(u,w) - d(u,v) - d(v,w)
};

struct MetricReport {
  bool symmetric = true;
  bool nonnegative = true;
  bool zeroDiagonal = true;
  std::vector<TriangleViolation> violations;

  bool metric() const {
    return symmetric && nonnegative && zeroDiagonal && violations.empty();
  }
};

/// Checks symmetry, nonnegativity, zero diagonal and all triangle-inequality
/// violations (O(n^3) scan).
MetricReport validateMetric(const DistanceMatrix& d);

/// Cyclic vertex ordering visiting every vertex of {0..n-1} exactly once.
/// Requires n >= 3 so the induced edge set has n distinct edges.
class Tour {
public:
  /// Empty placeholder; every meaningful construction goes through the
  /// validating constructor below.
  Tour() = default;
  explicit Tour(std::vector<Vertex> order);

  int size() const { return static_cast<int>(order_.size()); }
  const std::vector<Vertex>& order() const { return order_; }
  Tour reversed() const;

  friend bool operator==(const Tour&, const Tour&) = default;

private:
  std::vector<Vertex> order_;
};

/// The n undirected edges {v_i, v_{i+1}} including the closing edge.
EdgeSet tourEdges(const Tour& c);

/// Sum of dist over the induced edges; canonical (sorted-edge) summation, so
/// it is exactly rotation- and reversal-invariant.
double tourCost(const DistanceMatrix& d, const Tour& c);

/// Intersection of all given edge sets; the list must be nonempty.
EdgeSet mutualIntersection(std::span<const EdgeSet> sets);

/// RecovTSP / k-St-RecovTSP instance: k >= 2 metrics on the same n >= 3
/// vertices plus the intersection size parameter 0 <= q <= n.
class Instance {
public:
  /// Empty placeholder; see Tour.
  Instance() = default;
  Instance(std::vector<DistanceMatrix> metrics, int q);

  int n() const { return n_; }
  int q() const { return q_; }
  int stages() const { return static_cast<int>(metrics_.size()); }
  const DistanceMatrix& metric(int stage) const { return metrics_.at(static_cast<std::size_t>(stage)); }
  const std::vector<DistanceMatrix>& metrics() const { return metrics_; }

private:
  int n_ = 0, q_ = 0;
  std::vector<DistanceMatrix> metrics_;
};

struct FeasibilityVerdict {
  bool feasible = false;
  int intersectionSize = 0;
  std::vector<std::string> violations;
};

/// Verdict-style solution check: every tour must be a Hamiltonian cycle on
/// the instance's vertices and the mutual edge intersection must have size
/// at least q. Never throws; failures are reported in the verdict.
FeasibilityVerdict checkSolution(const Instance& inst, std::span<const Tour> tours);

/// Same check on raw vertex sequences (used on untrusted file input).
FeasibilityVerdict checkSolutionRaw(const Instance& inst,
                                    const std::vector<std::vector<Vertex>>& tours);

}  // namespace recovtsp
