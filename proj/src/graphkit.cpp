#include "recovtsp/graphkit.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

#include "recovtsp/rng.hpp"

namespace recovtsp {

namespace {

/// Union-find with path halving.
class DisjointSet {
public:
  explicit DisjointSet(int n) : parent_(static_cast<std::size_t>(n)) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  int find(int x) {
    while (parent_[static_cast<std::size_t>(x)] != x) {
      parent_[static_cast<std::size_t>(x)] = parent_[parent_[static_cast<std::size_t>(x)]];
      x = parent_[static_cast<std::size_t>(x)];
    }
    return x;
  }
  /// Returns false if x and y were already connected.
  bool unite(int x, int y) {
    int rx = find(x), ry = find(y);
    if (rx == ry) return false;
    parent_[static_cast<std::size_t>(rx)] = ry;
    return true;
  }

private:
  std::vector<int> parent_;
};

}  // namespace

EdgeSet Path::edgeSet() const {
  EdgeSet s;
  for (std::size_t i = 0; i + 1 < order.size(); ++i) s.insert(Edge(order[i], order[i + 1]));
  return s;
}

std::vector<Edge> ClosedWalk::edgeMultiset() const {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i + 1 < order.size(); ++i) edges.emplace_back(order[i], order[i + 1]);
  std::sort(edges.begin(), edges.end());
  return edges;
}

double ClosedWalk::cost(const DistanceMatrix& d) const {
  double total = 0.0;
  for (const Edge& e : edgeMultiset()) total += d.edgeCost(e);
  return total;
}

void ChoicePolicy::orderChoices(std::vector<Vertex>& candidates, Vertex at) const {
  std::sort(candidates.begin(), candidates.end());
  if (!adversarial) return;
  SplitMix64 rng(seed ^ (0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(at + 1)));
  rng.shuffle(candidates);
}

EdgeSet mstForced(const DistanceMatrix& d, const std::vector<Vertex>& vertices,
                  const EdgeSet& forced) {
  if (vertices.empty()) throw InputError("mstForced on an empty vertex set");
  std::vector<bool> member(static_cast<std::size_t>(d.size()), false);
  for (Vertex v : vertices) {
    if (v < 0 || v >= d.size()) throw InputError("mstForced vertex out of range");
    member[static_cast<std::size_t>(v)] = true;
  }

  DisjointSet dsu(d.size());
  EdgeSet tree;
  for (const Edge& e : forced) {
    if (!member[static_cast<std::size_t>(e.u)] || !member[static_cast<std::size_t>(e.v)])
      throw InputError("forced edge leaves the vertex set");
    if (!dsu.unite(e.u, e.v)) throw InputError("forced edge set contains a cycle");
    tree.insert(e);
  }

  std::vector<Vertex> sorted(vertices);
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw InputError("mstForced vertex set contains duplicates");
  struct Cand {
    double w;
    Edge e;
  };
  std::vector<Cand> cands;
  cands.reserve(sorted.size() * (sorted.size() - 1) / 2);
  for (std::size_t i = 0; i < sorted.size(); ++i)
    for (std::size_t j = i + 1; j < sorted.size(); ++j) {
      Edge e(sorted[i], sorted[j]);
      cands.push_back({d.edgeCost(e), e});
    }
  std::stable_sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
    if (a.w != b.w) return a.w < b.w;
    return a.e < b.e;
  });

  std::size_t needed = sorted.size() - 1;
  for (const Cand& c : cands) {
    if (tree.size() == needed) break;
    if (dsu.unite(c.e.u, c.e.v)) tree.insert(c.e);
  }
  if (tree.size() != needed) throw InputError("mstForced could not span the vertex set");
  return tree;
}

std::vector<Component> components(const EdgeSet& forest) {
  std::vector<Component> out;
  if (forest.empty()) return out;

  const int top = forest.maxVertex();
  DisjointSet dsu(top + 1);
  for (const Edge& e : forest)
    if (!dsu.unite(e.u, e.v))
      throw InputError("edge set contains a cycle; expected a forest");

  std::map<int, std::size_t> rootToIndex;
  std::vector<std::vector<Vertex>> verts;
  std::vector<EdgeSet> edges;
  auto slot = [&](int root) {
    auto [it, inserted] = rootToIndex.try_emplace(root, verts.size());
    if (inserted) {
      verts.emplace_back();
      edges.emplace_back();
    }
    return it->second;
  };
  std::vector<bool> seen(static_cast<std::size_t>(top + 1), false);
  for (const Edge& e : forest) {
    std::size_t s = slot(dsu.find(e.u));
    edges[s].insert(e);
    for (Vertex v : {e.u, e.v})
      if (!seen[static_cast<std::size_t>(v)]) {
        seen[static_cast<std::size_t>(v)] = true;
        verts[s].push_back(v);
      }
  }
  for (std::size_t s = 0; s < verts.size(); ++s) {
    std::sort(verts[s].begin(), verts[s].end());
    out.push_back({std::move(verts[s]), std::move(edges[s])});
  }
  // Deterministic order: by smallest contained vertex.
  std::sort(out.begin(), out.end(),
            [](const Component& a, const Component& b) { return a.vertices[0] < b.vertices[0]; });
  return out;
}

Path doubleTreeHamiltonPath(const Component& k, const DistanceMatrix& d,
                            const ChoicePolicy& policy) {
  if (k.vertices.empty()) throw InputError("double-tree on an empty component");
  if (k.edges.size() + 1 != k.vertices.size())
    throw InputError("component is not a tree");
  for (const Edge& e : k.edges)
    if (e.v >= d.size()) throw InputError("component vertex outside the metric");

  std::map<Vertex, std::vector<Vertex>> adj;
  for (Vertex v : k.vertices) adj[v];
  for (const Edge& e : k.edges) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }

  const Vertex root = *std::min_element(k.vertices.begin(), k.vertices.end());
  // Iterative preorder; children pushed in reverse visit order.
  Path path;
  std::vector<Vertex> stack{root};
  std::map<Vertex, bool> visited;
  while (!stack.empty()) {
    Vertex v = stack.back();
    stack.pop_back();
    if (visited[v]) continue;
    visited[v] = true;
    path.order.push_back(v);
    std::vector<Vertex> children;
    for (Vertex w : adj[v])
      if (!visited[w]) children.push_back(w);
    policy.orderChoices(children, v);
    for (auto it = children.rbegin(); it != children.rend(); ++it) stack.push_back(*it);
  }
  if (path.order.size() != k.vertices.size())
    throw InputError("component is not connected");
  return path;
}

namespace {

struct MultiEdge {
  Vertex u, v;
  int pathIndex;  // -1 for a real tree edge, otherwise the path it stands for
  bool used = false;
  Vertex other(Vertex at) const { return at == u ? v : u; }
};

void validateEulerInput(int n, const EdgeSet& tree, const std::vector<Path>& paths) {
  if (static_cast<int>(tree.size()) != n - 1)
    throw InputError("tree must have exactly n-1 edges");
  DisjointSet dsu(n);
  for (const Edge& e : tree) {
    if (e.v >= n) throw InputError("tree edge endpoint out of range");
    if (!dsu.unite(e.u, e.v)) throw InputError("tree edge set contains a cycle");
  }
  std::vector<bool> inPath(static_cast<std::size_t>(n), false);
  for (const Path& p : paths) {
    if (p.order.size() < 2) throw InputError("forced path needs at least one edge");
    for (Vertex v : p.order) {
      if (v < 0 || v >= n) throw InputError("path vertex out of range");
      if (inPath[static_cast<std::size_t>(v)])
        throw InputError("forced paths must be pairwise vertex-disjoint");
      inPath[static_cast<std::size_t>(v)] = true;
    }
    for (std::size_t i = 0; i + 1 < p.order.size(); ++i)
      if (!tree.contains(Edge(p.order[i], p.order[i + 1])))
        throw InputError("forced path edge is not a tree edge");
  }
}

}  // namespace

ClosedWalk eulerWithForcedPaths(int n, const EdgeSet& tree, const std::vector<Path>& paths,
                                const ChoicePolicy& policy) {
  validateEulerInput(n, tree, paths);
  if (n == 1) return ClosedWalk{{0}};  // trivial closed walk, no edges

  // Doubled tree, minus one copy of each path edge, plus one special edge
  // per path standing for its full traversal.
  std::vector<MultiEdge> edges;
  for (const Edge& e : tree) {
    edges.push_back({e.u, e.v, -1});
    edges.push_back({e.u, e.v, -1});
  }
  for (std::size_t j = 0; j < paths.size(); ++j) {
    const auto& o = paths[j].order;
    for (std::size_t i = 0; i + 1 < o.size(); ++i) {
      Edge e(o[i], o[i + 1]);
      for (auto& me : edges)
        if (me.pathIndex == -1 && Edge(me.u, me.v) == e) {
          me.pathIndex = -2;  // deleted copy, replaced by the special edge
          break;
        }
    }
    edges.push_back({o.front(), o.back(), static_cast<int>(j)});
  }
  std::erase_if(edges, [](const MultiEdge& me) { return me.pathIndex == -2; });

  std::vector<std::vector<int>> incident(static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < edges.size(); ++i) {
    incident[static_cast<std::size_t>(edges[i].u)].push_back(static_cast<int>(i));
    incident[static_cast<std::size_t>(edges[i].v)].push_back(static_cast<int>(i));
  }
  // Deterministic edge-choice order per vertex: by (neighbor, edge id);
  // adversarial mode shuffles with the per-vertex stream.
  for (int v = 0; v < n; ++v) {
    auto& inc = incident[static_cast<std::size_t>(v)];
    std::sort(inc.begin(), inc.end(), [&](int a, int b) {
      Vertex na = edges[static_cast<std::size_t>(a)].other(v);
      Vertex nb = edges[static_cast<std::size_t>(b)].other(v);
      if (na != nb) return na < nb;
      return a < b;
    });
    if (policy.adversarial) {
      SplitMix64 rng(policy.seed ^ (0xbf58476d1ce4e5b9ULL * static_cast<std::uint64_t>(v + 1)));
      rng.shuffle(inc);
    }
  }

  // Hierholzer, tracking which edge produced each step so special edges can
  // be expanded afterwards.
  std::vector<std::size_t> cursor(static_cast<std::size_t>(n), 0);
  std::vector<std::pair<Vertex, int>> stack{{0, -1}};  // (vertex, edge used to arrive)
  std::vector<std::pair<Vertex, int>> circuit;
  while (!stack.empty()) {
    auto [v, viaEdge] = stack.back();
    auto& inc = incident[static_cast<std::size_t>(v)];
    auto& cur = cursor[static_cast<std::size_t>(v)];
    while (cur < inc.size() && edges[static_cast<std::size_t>(inc[cur])].used) ++cur;
    if (cur == inc.size()) {
      circuit.push_back({v, viaEdge});
      stack.pop_back();
    } else {
      int id = inc[cur];
      edges[static_cast<std::size_t>(id)].used = true;
      stack.push_back({edges[static_cast<std::size_t>(id)].other(v), id});
    }
  }
  std::reverse(circuit.begin(), circuit.end());
  if (circuit.size() != edges.size() + 1)
    throw InputError("tree does not span the vertex set");

  ClosedWalk walk;
  walk.order.push_back(circuit[0].first);
  for (std::size_t i = 1; i < circuit.size(); ++i) {
    auto [v, viaEdge] = circuit[i];
    const MultiEdge& me = edges[static_cast<std::size_t>(viaEdge)];
    if (me.pathIndex >= 0) {
      const auto& o = paths[static_cast<std::size_t>(me.pathIndex)].order;
      Vertex from = walk.order.back();
      if (from == o.front()) {
        walk.order.insert(walk.order.end(), o.begin() + 1, o.end());
      } else {
        walk.order.insert(walk.order.end(), o.rbegin() + 1, o.rend());
      }
    } else {
      walk.order.push_back(v);
    }
  }

  // Internal invariant: the walk traverses each tree edge exactly twice.
  std::vector<Edge> expect;
  for (const Edge& e : tree) {
    expect.push_back(e);
    expect.push_back(e);
  }
  std::sort(expect.begin(), expect.end());
  if (walk.edgeMultiset() != expect)
    throw CertificateViolation("euler walk does not traverse the doubled tree exactly");
  return walk;
}

namespace {

/// Positions [t, t+len-1] in `order` where path p occurs forward or reversed.
long findOccurrence(const std::vector<Vertex>& order, const Path& p, std::size_t from) {
  const auto& o = p.order;
  if (o.size() > order.size()) return -1;
  for (std::size_t t = from; t + o.size() <= order.size(); ++t) {
    bool fwd = true, rev = true;
    for (std::size_t i = 0; i < o.size() && (fwd || rev); ++i) {
      if (order[t + i] != o[i]) fwd = false;
      if (order[t + i] != o[o.size() - 1 - i]) rev = false;
    }
    if (fwd || rev) return static_cast<long>(t);
  }
  return -1;
}

}  // namespace

Tour shortcutPreservingPaths(const ClosedWalk& walk, const std::vector<Path>& paths,
                             const DistanceMatrix& d) {
  const int n = d.size();
  if (walk.order.size() < 2 || walk.order.front() != walk.order.back())
    throw InputError("walk is not closed");
  {
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    for (Vertex v : walk.order) {
      if (v < 0 || v >= n) throw InputError("walk vertex out of range");
      seen[static_cast<std::size_t>(v)] = true;
    }
    if (!std::all_of(seen.begin(), seen.end(), [](bool b) { return b; }))
      throw InputError("walk does not visit every vertex");
  }

  // pathOf[v]: index of the path containing v, or -1; inner[v]: v is a
  // non-endpoint vertex of its path.
  std::vector<int> pathOf(static_cast<std::size_t>(n), -1);
  std::vector<bool> inner(static_cast<std::size_t>(n), false);
  for (std::size_t j = 0; j < paths.size(); ++j) {
    const auto& o = paths[j].order;
    if (o.size() < 2) throw InputError("forced path needs at least one edge");
    for (std::size_t i = 0; i < o.size(); ++i) {
      if (pathOf[static_cast<std::size_t>(o[i])] != -1)
        throw InputError("forced paths must be pairwise vertex-disjoint");
      pathOf[static_cast<std::size_t>(o[i])] = static_cast<int>(j);
      if (i > 0 && i + 1 < o.size()) inner[static_cast<std::size_t>(o[i])] = true;
    }
  }

  // Rotate so the start is not an inner path vertex; this never splits an
  // occurrence because occurrences consist of exact path copies.
  const std::size_t m = walk.order.size() - 1;
  std::size_t shift = 0;
  while (shift < m && inner[static_cast<std::size_t>(walk.order[shift])]) ++shift;
  if (shift == m) throw InputError("walk has no admissible start vertex");
  std::vector<Vertex> w(m + 1);
  for (std::size_t i = 0; i < m; ++i) w[i] = walk.order[(i + shift) % m];
  w[m] = w[0];

  // First full (contiguous) traversal of each path in the rotated walk.
  std::vector<long> firstAt(paths.size(), -1);
  std::vector<int> startsHere(m, -1);
  for (std::size_t j = 0; j < paths.size(); ++j) {
    firstAt[j] = findOccurrence(w, paths[j], 0);
    if (firstAt[j] < 0)
      throw InputError("a forced path is not a contiguous subsequence of the walk");
    startsHere[static_cast<std::size_t>(firstAt[j])] = static_cast<int>(j);
  }

  std::vector<bool> emitted(static_cast<std::size_t>(n), false);
  std::vector<Vertex> order;
  order.reserve(static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < m;) {
    const int j = startsHere[i];
    if (j >= 0) {
      const auto& o = paths[static_cast<std::size_t>(j)].order;
      for (std::size_t t = 0; t < o.size(); ++t) {
        Vertex v = w[i + t];
        if (emitted[static_cast<std::size_t>(v)])
          throw CertificateViolation("path vertex was emitted before its first traversal");
        emitted[static_cast<std::size_t>(v)] = true;
        order.push_back(v);
      }
      i += o.size() - 1;  // continue from the path's last vertex
      continue;
    }
    Vertex v = w[i];
    if (pathOf[static_cast<std::size_t>(v)] < 0 && !emitted[static_cast<std::size_t>(v)]) {
      emitted[static_cast<std::size_t>(v)] = true;
      order.push_back(v);
    }
    ++i;
  }
  if (static_cast<int>(order.size()) != n)
    throw CertificateViolation("shortcut did not emit every vertex exactly once");

  Tour tour(std::move(order));
  return tour;
}

EdgeSet substituteComponents(const EdgeSet& tree, const std::vector<Component>& comps,
                             const std::vector<Path>& paths) {
  if (comps.size() != paths.size())
    throw InputError("component/path count mismatch");
  EdgeSet out = tree;
  for (std::size_t j = 0; j < comps.size(); ++j) {
    std::vector<Vertex> pathVerts(paths[j].order);
    std::sort(pathVerts.begin(), pathVerts.end());
    if (pathVerts != comps[j].vertices)
      throw InputError("substituted path does not span its component");
    for (const Edge& e : comps[j].edges)
      if (!out.erase(e)) throw InputError("component edge missing from tree");
    for (const Edge& e : paths[j].edgeSet()) out.insert(e);
  }
  return out;
}

}  // namespace recovtsp
