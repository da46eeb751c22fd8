#pragma once

#include <cstdint>
#include <vector>

#include "recovtsp/core.hpp"

namespace recovtsp {

/// Connected tree component of a forest: |edges| = |vertices| - 1.
struct Component {
  std::vector<Vertex> vertices;  // sorted
  EdgeSet edges;
};

/// Simple path (v_1, ..., v_l), l >= 1, no repeated vertex.
struct Path {
  std::vector<Vertex> order;

  std::size_t length() const { return order.empty() ? 0 : order.size() - 1; }
  EdgeSet edgeSet() const;

  friend bool operator==(const Path&, const Path&) = default;
};

/// Closed walk v_0, ..., v_m with v_0 = v_m; may traverse multi-edges.
struct ClosedWalk {
  std::vector<Vertex> order;

  std::size_t steps() const { return order.empty() ? 0 : order.size() - 1; }
  /// Traversed edge multiset, as a sorted vector (with repetitions).
  std::vector<Edge> edgeMultiset() const;
  double cost(const DistanceMatrix& d) const;
};

/// Tie-breaking policy for the choice points of the pipeline (double-tree
/// child order, Hierholzer edge order). Default: ascending vertex index,
/// which makes every output deterministic. Adversarial mode permutes the
/// orders with a SplitMix64 stream keyed by (seed, vertex); it exists to
/// reproduce worst-case runs and to fuzz the structural invariants, which
/// hold for any choice order.
struct ChoicePolicy {
  bool adversarial = false;
  std::uint64_t seed = 0;

  void orderChoices(std::vector<Vertex>& candidates, Vertex at) const;
};

/// Minimum spanning tree of the complete graph on `vertices` under `d` among
/// trees containing all `forced` edges (Kruskal, forced edges first).
/// Throws InputError if the forced set contains a cycle or leaves `vertices`.
EdgeSet mstForced(const DistanceMatrix& d, const std::vector<Vertex>& vertices,
                  const EdgeSet& forced);

/// Maximal connected components of a forest given as an edge set. Isolated
/// vertices yield no component. Throws InputError if the set contains a
/// cycle (the intersection of two trees never does).
std::vector<Component> components(const EdgeSet& forest);

/// Hamilton path on K.vertices with d-cost <= 2 * d-cost(K.edges): the
/// depth-first preorder of K from its lowest-index vertex (equivalently the
/// shortcut Euler tour of the doubled tree with the cycle-closing edge
/// dropped). Child visit order is ascending index unless `policy` says
/// otherwise; the factor-2 bound holds for any order.
Path doubleTreeHamiltonPath(const Component& k, const DistanceMatrix& d,
                            const ChoicePolicy& policy = {});

/// Closed walk traversing every edge of the doubled multiset tree+tree
/// exactly once, in which every input path occurs as a contiguous
/// subsequence (forward or reversed). Construction: delete one copy of each
/// path edge, add a special edge per path, run Hierholzer, then expand each
/// special edge back into its path in traversal direction.
///
/// Preconditions (checked): `tree` spans {0..n-1}; each path's edges lie in
/// `tree`; paths are pairwise vertex-disjoint with >= 2 vertices.
ClosedWalk eulerWithForcedPaths(int n, const EdgeSet& tree,
                                const std::vector<Path>& paths,
                                const ChoicePolicy& policy = {});

/// First-visit shortcutting of a closed walk into a tour, except that the
/// vertices of each path are skipped until the walk's first full traversal
/// of that path, which is emitted whole. The result contains every path's
/// edges and, for metric d, costs no more than the walk.
///
/// The walk is rotated so it starts at the first vertex that is not an inner
/// vertex of any path; paths must each occur contiguously in the walk and be
/// pairwise vertex-disjoint, and the walk must visit every vertex of
/// {0..d.size()-1}.
Tour shortcutPreservingPaths(const ClosedWalk& walk, const std::vector<Path>& paths,
                             const DistanceMatrix& d);

/// Replaces each component's edges inside `tree` by the corresponding
/// path's edges (Algorithm 1 line 6, T_i -> T'_i). paths[j] must span
/// comps[j].vertices. The result is again a spanning tree.
EdgeSet substituteComponents(const EdgeSet& tree, const std::vector<Component>& comps,
                             const std::vector<Path>& paths);

}  // namespace recovtsp
