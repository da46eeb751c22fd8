#include "recovtsp/instances.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "recovtsp/rng.hpp"

namespace recovtsp {

using nlohmann::json;

namespace {

int defaultQ(int n) { return (n + 1) / 2; }

DistanceMatrix euclideanMatrix(const std::vector<Point>& pts) {
  const int n = static_cast<int>(pts.size());
  DistanceMatrix d(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) {
      const double dx = pts[static_cast<std::size_t>(u)][0] - pts[static_cast<std::size_t>(v)][0];
      const double dy = pts[static_cast<std::size_t>(u)][1] - pts[static_cast<std::size_t>(v)][1];
      d.set(u, v, std::hypot(dx, dy));
    }
  return d;
}

void floydWarshallClosure(DistanceMatrix& d) {
  const int n = d.size();
  for (int via = 0; via < n; ++via)
    for (int u = 0; u < n; ++u)
      for (int v = 0; v < n; ++v) {
        const double relaxed = d(u, via) + d(via, v);
        if (relaxed < d(u, v)) d.set(u, v, relaxed);
      }
}

/// Every non-tree edge must be strictly heavier than the heaviest tree edge
/// on the cycle it closes; otherwise the MST is not unique.
void verifyUniqueMst(const DistanceMatrix& d, const EdgeSet& tree, const char* label) {
  const int n = d.size();
  std::vector<std::vector<std::pair<Vertex, double>>> adj(static_cast<std::size_t>(n));
  for (const Edge& e : tree) {
    adj[static_cast<std::size_t>(e.u)].push_back({e.v, d.edgeCost(e)});
    adj[static_cast<std::size_t>(e.v)].push_back({e.u, d.edgeCost(e)});
  }
  std::vector<double> maxOnPath(static_cast<std::size_t>(n));
  for (Vertex root = 0; root < n; ++root) {
    std::fill(maxOnPath.begin(), maxOnPath.end(), -1.0);
    maxOnPath[static_cast<std::size_t>(root)] = 0.0;
    std::vector<Vertex> stack{root};
    while (!stack.empty()) {
      Vertex v = stack.back();
      stack.pop_back();
      for (auto [w, cost] : adj[static_cast<std::size_t>(v)])
        if (maxOnPath[static_cast<std::size_t>(w)] < 0.0) {
          maxOnPath[static_cast<std::size_t>(w)] =
              std::max(maxOnPath[static_cast<std::size_t>(v)], cost);
          stack.push_back(w);
        }
    }
    for (Vertex v = root + 1; v < n; ++v) {
      Edge e(root, v);
      if (tree.contains(e)) continue;
      const double w = d.edgeCost(e);
      if (w <= maxOnPath[static_cast<std::size_t>(v)] + 1e-12 * std::max(1.0, w)) {
        std::ostringstream msg;
        msg << label << " minimum spanning tree is not unique: edge {" << root << "," << v
            << "} ties the cycle maximum";
        throw CertificateViolation(msg.str());
      }
    }
  }
}

}  // namespace

Instance genEuclidean(int n, std::uint64_t seed, std::optional<int> q, int stages) {
  if (n < 3) throw InputError("genEuclidean needs n >= 3");
  if (stages < 2) throw InputError("genEuclidean needs at least two stages");
  SplitMix64 rng(seed);
  std::vector<DistanceMatrix> metrics;
  for (int s = 0; s < stages; ++s) {
    std::vector<Point> pts(static_cast<std::size_t>(n));
    for (auto& p : pts) {
      p[0] = rng.nextDouble();
      p[1] = rng.nextDouble();
    }
    metrics.push_back(euclideanMatrix(pts));
  }
  return Instance(std::move(metrics), q.value_or(defaultQ(n)));
}

Instance genRandomMetric(int n, std::uint64_t seed, std::optional<int> q, int stages) {
  if (n < 3) throw InputError("genRandomMetric needs n >= 3");
  if (stages < 2) throw InputError("genRandomMetric needs at least two stages");
  SplitMix64 rng(seed);
  std::vector<DistanceMatrix> metrics;
  for (int s = 0; s < stages; ++s) {
    DistanceMatrix d(n);
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v) d.set(u, v, rng.nextDouble(1.0, 2.0));
    floydWarshallClosure(d);
    metrics.push_back(std::move(d));
  }
  return Instance(std::move(metrics), q.value_or(defaultQ(n)));
}

namespace {

/// Vertex numbering of the tightness construction. The intersection
/// component occupies ids 0..12k-1 in exactly the order the worst-case
/// double-tree preorder visits them, so the solver's default deterministic
/// choice rule (lowest-index root, ascending children) reproduces that
/// preorder on its own. Pendant satellites follow.
struct TightLayout {
  int k = 0;
  // Per column j (0-based): component block at 11*j.
  int topW(int j) const { return 11 * j + 0; }
  int topC(int j) const { return 11 * j + 1; }
  int topS(int j) const { return 11 * j + 2; }
  int helperBelow(int j) const { return 11 * j + 3; }  // between topS and botN
  int botN(int j) const { return 11 * j + 4; }
  int botC(int j) const { return 11 * j + 5; }
  int botW(int j) const { return 11 * j + 6; }
  int botS(int j) const { return 11 * j + 7; }
  int botE(int j) const { return 11 * j + 8; }
  int topE(int j) const { return 11 * j + 9; }
  // Slot 10 holds the rightward helper, except in the last column where it
  // holds the anchored satellite (the one satellite that keeps its stage-1
  // position, hanging off topE in both stages).
  int helperRight(int j) const { return 11 * j + 10; }
  int anchoredSatellite() const { return 11 * (k - 1) + 10; }
  int topN(int j) const { return 11 * k + (k - 1 - j); }
  int componentSize() const { return 12 * k; }

  // Pendant satellites: ids 12k .. 20k-2 (the last column has 7, not 8,
  // since its top-NE satellite is anchored inside the component).
  int satBase(int j) const { return 12 * k + 8 * j; }
  int topNW(int j) const { return satBase(j) + 0; }
  int topSW(int j) const { return satBase(j) + 1; }
  int topNE(int j) const {  // anchored in the last column
    return j == k - 1 ? anchoredSatellite() : satBase(j) + 2;
  }
  int topSE(int j) const { return satBase(j) + (j == k - 1 ? 2 : 3); }
  int botNW(int j) const { return satBase(j) + (j == k - 1 ? 3 : 4); }
  int botSW(int j) const { return satBase(j) + (j == k - 1 ? 4 : 5); }
  int botNE(int j) const { return satBase(j) + (j == k - 1 ? 5 : 6); }
  int botSE(int j) const { return satBase(j) + (j == k - 1 ? 6 : 7); }
};

}  // namespace

TightFamilyCertificate genTightFamily(int k, double eps) {
  if (k < 2) throw InputError("tight family needs k >= 2");
  if (!(eps > 0.0 && eps < 1.0 / (static_cast<double>(k) * k)))
    throw InputError("tight family needs 0 < eps < 1/k^2");

  TightFamilyCertificate cert;
  cert.k = k;
  cert.eps = eps;
  cert.n = 20 * k - 1;
  cert.q = 12 * k - 1;
  cert.expectedBadPerStage = 8.0 * k - 4.0;
  cert.expectedGoodPerStage = 2.0 * k;
  cert.adversarialSeed = 0;

  const TightLayout L{k};
  const int n = cert.n;
  cert.points1.assign(static_cast<std::size_t>(n), {0.0, 0.0});
  cert.points2.assign(static_cast<std::size_t>(n), {0.0, 0.0});
  auto place = [&](int id, double cx, double cy, double ox1, double oy1, double ox2, double oy2) {
    cert.points1[static_cast<std::size_t>(id)] = {cx + ox1, cy + oy1};
    cert.points2[static_cast<std::size_t>(id)] = {cx + ox2, cy + oy2};
  };
  auto placeFixed = [&](int id, double cx, double cy, double ox, double oy) {
    place(id, cx, cy, ox, oy, ox, oy);
  };

  const double e = eps;
  for (int j = 0; j < k; ++j) {
    const double x = static_cast<double>(j);
    // Top-row gadget, center (j, 0); non-satellites share both positions.
    placeFixed(L.topC(j), x, 0, 0, 0);
    placeFixed(L.topE(j), x, 0, 2 * e, 0);
    placeFixed(L.topN(j), x, 0, 0, 2 * e);
    placeFixed(L.topW(j), x, 0, -2 * e, 0);
    placeFixed(L.topS(j), x, 0, 0, -2 * e);
    place(L.topNW(j), x, 0, -2 * e, e, -e, 2 * e);
    place(L.topSW(j), x, 0, -2 * e, -e, -e, -2 * e);
    place(L.topSE(j), x, 0, 2 * e, -e, e, -2 * e);
    if (j == k - 1) {
      placeFixed(L.anchoredSatellite(), x, 0, 2 * e, e);  // does not move between stages
    } else {
      place(L.topNE(j), x, 0, 2 * e, e, e, 2 * e);
    }
    // Bottom-row gadget, center (j, -1).
    placeFixed(L.botC(j), x, -1, 0, 0);
    placeFixed(L.botE(j), x, -1, 2 * e, 0);
    placeFixed(L.botN(j), x, -1, 0, 2 * e);
    placeFixed(L.botW(j), x, -1, -2 * e, 0);
    placeFixed(L.botS(j), x, -1, 0, -2 * e);
    place(L.botNW(j), x, -1, -2 * e, e, -e, 2 * e);
    place(L.botSW(j), x, -1, -2 * e, -e, -e, -2 * e);
    place(L.botNE(j), x, -1, 2 * e, e, e, 2 * e);
    place(L.botSE(j), x, -1, 2 * e, -e, e, -2 * e);
    // Helpers at distance 3*eps from the top-row grid points.
    placeFixed(L.helperBelow(j), x, 0, 0, -3 * e);
    if (j < k - 1) placeFixed(L.helperRight(j), x, 0, 3 * e, 0);
  }

  DistanceMatrix d1 = euclideanMatrix(cert.points1);
  DistanceMatrix d2 = euclideanMatrix(cert.points2);
  std::vector<Vertex> all(static_cast<std::size_t>(n));
  std::iota(all.begin(), all.end(), 0);

  cert.t1 = mstForced(d1, all, EdgeSet{});
  cert.t2 = mstForced(d2, all, EdgeSet{});
  verifyUniqueMst(d1, cert.t1, "stage-1");
  verifyUniqueMst(d2, cert.t2, "stage-2");

  cert.intersection = intersect(cert.t1, cert.t2);
  if (static_cast<int>(cert.intersection.size()) != cert.q)
    throw CertificateViolation("tight family: intersection size is not 12k-1");
  std::vector<Component> comps = components(cert.intersection);
  if (comps.size() != 1)
    throw CertificateViolation("tight family: intersection is not a single component");
  for (int i = 0; i < L.componentSize(); ++i)
    if (comps[0].vertices[static_cast<std::size_t>(i)] != i)
      throw CertificateViolation("tight family: component vertices are not 0..12k-1");

  // Run the worst-case pipeline for stage 1; the numbering makes the default
  // deterministic choice order adversarial here.
  const DistanceMatrix combined = combineMetrics(d1, d2);
  cert.componentPath = doubleTreeHamiltonPath(comps[0], combined);
  for (int i = 0; i < L.componentSize(); ++i)
    if (cert.componentPath.order[static_cast<std::size_t>(i)] != i)
      throw CertificateViolation("tight family: preorder path is not the planned worst case");

  EdgeSet t1sub = substituteComponents(cert.t1, comps, {cert.componentPath});
  ClosedWalk walk = eulerWithForcedPaths(n, t1sub, {cert.componentPath});
  Tour bad = shortcutPreservingPaths(walk, {cert.componentPath}, d1);
  cert.badTour1 = bad;
  cert.badTour2 = bad;  // identical pair: trivially feasible, both stages near 8k-4
  cert.badStage1 = tourCost(d1, bad);
  cert.badStage2 = tourCost(d2, bad);
  cert.badValue = cert.badStage1 + cert.badStage2;

  // Serpentine reference tour: top row left to right, bottom row right to
  // left, picking up helpers on the way.
  std::vector<Vertex> good;
  for (int j = 0; j < k; ++j) {
    for (int id : {L.topNW(j), L.topW(j), L.topSW(j), L.topS(j), L.helperBelow(j), L.topC(j),
                   L.topN(j), L.topNE(j), L.topE(j), L.topSE(j)})
      good.push_back(id);
    if (j < k - 1) good.push_back(L.helperRight(j));
  }
  for (int j = k - 1; j >= 0; --j)
    for (int id : {L.botNE(j), L.botE(j), L.botSE(j), L.botS(j), L.botSW(j), L.botW(j),
                   L.botNW(j), L.botC(j), L.botN(j)})
      good.push_back(id);
  cert.goodTour = Tour(std::move(good));
  cert.goodStage1 = tourCost(d1, cert.goodTour);
  cert.goodStage2 = tourCost(d2, cert.goodTour);
  cert.goodValue = cert.goodStage1 + cert.goodStage2;

  cert.instance = Instance({d1, d2}, cert.q);
  for (const Tour& t : {cert.badTour1, cert.goodTour}) {
    std::vector<Tour> pairTours{t, t};
    FeasibilityVerdict verdict = checkSolution(cert.instance, pairTours);
    if (!verdict.feasible)
      throw CertificateViolation("tight family: certified tour pair is infeasible");
  }
  return cert;
}

std::pair<Component, DistanceMatrix> genParisStar(int n) {
  if (n < 2) throw InputError("paris star needs n >= 2 leaves");
  DistanceMatrix d(n + 1);
  for (int u = 0; u <= n; ++u)
    for (int v = u + 1; v <= n; ++v) d.set(u, v, u == 0 ? 1.0 : 2.0);
  Component star;
  star.vertices.resize(static_cast<std::size_t>(n) + 1);
  std::iota(star.vertices.begin(), star.vertices.end(), 0);
  for (int leaf = 1; leaf <= n; ++leaf) star.edges.insert(Edge(0, leaf));
  return {std::move(star), std::move(d)};
}

DistanceMatrix reduceIntervalUncertainty(const UncertaintyIntervals& intervals) {
  const DistanceMatrix& lo = intervals.lower;
  const DistanceMatrix& hi = intervals.upper;
  if (lo.size() != hi.size()) throw InputError("interval bounds have different sizes");
  for (int u = 0; u < lo.size(); ++u)
    for (int v = 0; v < lo.size(); ++v) {
      if (lo(u, v) < 0.0) throw InputError("interval lower bound is negative");
      if (lo(u, v) > hi(u, v)) {
        std::ostringstream msg;
        msg << "interval bounds inverted at (" << u << "," << v << "): lower " << lo(u, v)
            << " > upper " << hi(u, v);
        throw InputError(msg.str());
      }
    }
  // Worst case of interval uncertainty: all costs at the upper bound.
  return hi;
}

// ---- JSON I/O ----

namespace {

json matrixToJson(const DistanceMatrix& d) {
  json rows = json::array();
  for (int u = 0; u < d.size(); ++u) {
    json row = json::array();
    for (int v = 0; v < d.size(); ++v) row.push_back(d(u, v));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<std::vector<double>> jsonToRows(const json& j, const char* field) {
  if (!j.is_array()) throw InputError(std::string(field) + " must be an array of rows");
  std::vector<std::vector<double>> rows;
  for (const auto& r : j) {
    if (!r.is_array()) throw InputError(std::string(field) + " rows must be arrays");
    rows.emplace_back();
    for (const auto& x : r) rows.back().push_back(x.get<double>());
  }
  return rows;
}

json edgesToJson(const EdgeSet& s) {
  json out = json::array();
  for (const Edge& e : s) out.push_back(json::array({e.u, e.v}));
  return out;
}

EdgeSet jsonToEdges(const json& j) {
  EdgeSet s;
  for (const auto& pair : j) s.insert(Edge(pair.at(0).get<int>(), pair.at(1).get<int>()));
  return s;
}

json loadJsonFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open file: " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& err) {
    throw InputError(path + ": " + err.what());
  }
}

void saveJsonFile(const json& j, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write file: " + path);
  out << j.dump(2) << '\n';
}

}  // namespace

DistanceMatrix MetricSpec::toMatrix() const {
  if (kind == Kind::Explicit) return DistanceMatrix::fromRows(rows);
  return euclideanMatrix(points);
}

MetricSpec MetricSpec::explicitMatrix(const DistanceMatrix& d) {
  MetricSpec spec;
  spec.kind = Kind::Explicit;
  for (int u = 0; u < d.size(); ++u) {
    spec.rows.emplace_back();
    for (int v = 0; v < d.size(); ++v) spec.rows.back().push_back(d(u, v));
  }
  return spec;
}

MetricSpec MetricSpec::euclidean(std::vector<Point> pts) {
  MetricSpec spec;
  spec.kind = Kind::Euclidean;
  spec.points = std::move(pts);
  return spec;
}

Instance InstanceDocument::toInstance() const {
  std::vector<DistanceMatrix> metrics;
  for (const MetricSpec& m : this->metrics) metrics.push_back(m.toMatrix());
  return Instance(std::move(metrics), q);
}

InstanceDocument readInstanceDocument(const std::string& path) {
  const json j = loadJsonFile(path);
  try {
    if (j.at("version").get<int>() != 1) throw InputError(path + ": unsupported version");
    InstanceDocument doc;
    doc.n = j.at("n").get<int>();
    doc.q = j.at("q").get<int>();
    for (const auto& m : j.at("metrics")) {
      const std::string type = m.at("type").get<std::string>();
      MetricSpec spec;
      if (type == "explicit") {
        spec.kind = MetricSpec::Kind::Explicit;
        spec.rows = jsonToRows(m.at("matrix"), "metrics[].matrix");
        if (static_cast<int>(spec.rows.size()) != doc.n)
          throw InputError(path + ": metric size disagrees with field n");
      } else if (type == "euclidean") {
        spec.kind = MetricSpec::Kind::Euclidean;
        for (const auto& p : m.at("points"))
          spec.points.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
        if (static_cast<int>(spec.points.size()) != doc.n)
          throw InputError(path + ": point count disagrees with field n");
      } else {
        throw InputError(path + ": unknown metric type '" + type + "'");
      }
      doc.metrics.push_back(std::move(spec));
    }
    return doc;
  } catch (const json::exception& err) {
    throw InputError(path + ": " + err.what());
  }
}

Instance readInstance(const std::string& path) { return readInstanceDocument(path).toInstance(); }

void writeInstanceDocument(const InstanceDocument& doc, const std::string& path) {
  json j;
  j["version"] = 1;
  j["n"] = doc.n;
  j["q"] = doc.q;
  j["metrics"] = json::array();
  for (const MetricSpec& m : doc.metrics) {
    json spec;
    if (m.kind == MetricSpec::Kind::Explicit) {
      spec["type"] = "explicit";
      spec["matrix"] = m.rows;
    } else {
      spec["type"] = "euclidean";
      json pts = json::array();
      for (const Point& p : m.points) pts.push_back(json::array({p[0], p[1]}));
      spec["points"] = std::move(pts);
    }
    j["metrics"].push_back(std::move(spec));
  }
  saveJsonFile(j, path);
}

void writeInstance(const Instance& inst, const std::string& path) {
  InstanceDocument doc;
  doc.n = inst.n();
  doc.q = inst.q();
  for (int s = 0; s < inst.stages(); ++s)
    doc.metrics.push_back(MetricSpec::explicitMatrix(inst.metric(s)));
  writeInstanceDocument(doc, path);
}

void writeSolution(const SolutionDocument& sol, const std::string& path) {
  json j;
  j["tours"] = sol.tours;
  j["stage_costs"] = sol.stageCosts;
  j["total"] = sol.total;
  json inter = json::array();
  for (const auto& e : sol.intersection) inter.push_back(json::array({e[0], e[1]}));
  j["intersection"] = std::move(inter);
  json cert = json::object();
  for (const auto& [key, value] : sol.certificate) cert[key] = value;
  j["certificate"] = std::move(cert);
  j["guarantee"] = sol.guarantee;
  saveJsonFile(j, path);
}

SolutionDocument readSolution(const std::string& path) {
  const json j = loadJsonFile(path);
  try {
    SolutionDocument sol;
    sol.tours = j.at("tours").get<std::vector<std::vector<Vertex>>>();
    sol.stageCosts = j.at("stage_costs").get<std::vector<double>>();
    sol.total = j.at("total").get<double>();
    for (const auto& e : j.at("intersection"))
      sol.intersection.push_back({e.at(0).get<Vertex>(), e.at(1).get<Vertex>()});
    for (const auto& [key, value] : j.at("certificate").items())
      sol.certificate.emplace_back(key, value.get<double>());
    sol.guarantee = j.at("guarantee").get<std::string>();
    return sol;
  } catch (const json::exception& err) {
    throw InputError(path + ": " + err.what());
  }
}

UncertaintyIntervals readIntervals(const std::string& path) {
  const json j = loadJsonFile(path);
  try {
    return {DistanceMatrix::fromRows(jsonToRows(j.at("lower"), "lower")),
            DistanceMatrix::fromRows(jsonToRows(j.at("upper"), "upper"))};
  } catch (const json::exception& err) {
    throw InputError(path + ": " + err.what());
  }
}

void writeIntervals(const UncertaintyIntervals& intervals, const std::string& path) {
  json j;
  j["lower"] = matrixToJson(intervals.lower);
  j["upper"] = matrixToJson(intervals.upper);
  saveJsonFile(j, path);
}

void writeTightCertificate(const TightFamilyCertificate& cert, const std::string& path) {
  json j;
  j["version"] = 1;
  j["k"] = cert.k;
  j["eps"] = cert.eps;
  j["n"] = cert.n;
  j["q"] = cert.q;
  json pts1 = json::array(), pts2 = json::array();
  for (const Point& p : cert.points1) pts1.push_back(json::array({p[0], p[1]}));
  for (const Point& p : cert.points2) pts2.push_back(json::array({p[0], p[1]}));
  j["points"] = json::array({std::move(pts1), std::move(pts2)});
  j["t1"] = edgesToJson(cert.t1);
  j["t2"] = edgesToJson(cert.t2);
  j["intersection"] = edgesToJson(cert.intersection);
  j["component_path"] = cert.componentPath.order;
  j["bad_tours"] = json::array({cert.badTour1.order(), cert.badTour2.order()});
  j["good_tour"] = cert.goodTour.order();
  j["bad_stage_costs"] = json::array({cert.badStage1, cert.badStage2});
  j["good_stage_costs"] = json::array({cert.goodStage1, cert.goodStage2});
  j["bad_value"] = cert.badValue;
  j["good_value"] = cert.goodValue;
  j["expected"] = {{"bad_per_stage", cert.expectedBadPerStage},
                   {"good_per_stage", cert.expectedGoodPerStage}};
  j["adversarial_seed"] = cert.adversarialSeed;
  saveJsonFile(j, path);
}

TightFamilyCertificate readTightCertificate(const std::string& path) {
  const json j = loadJsonFile(path);
  try {
    TightFamilyCertificate cert;
    cert.k = j.at("k").get<int>();
    cert.eps = j.at("eps").get<double>();
    cert.n = j.at("n").get<int>();
    cert.q = j.at("q").get<int>();
    for (const auto& p : j.at("points").at(0))
      cert.points1.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
    for (const auto& p : j.at("points").at(1))
      cert.points2.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
    cert.t1 = jsonToEdges(j.at("t1"));
    cert.t2 = jsonToEdges(j.at("t2"));
    cert.intersection = jsonToEdges(j.at("intersection"));
    cert.componentPath.order = j.at("component_path").get<std::vector<Vertex>>();
    cert.badTour1 = Tour(j.at("bad_tours").at(0).get<std::vector<Vertex>>());
    cert.badTour2 = Tour(j.at("bad_tours").at(1).get<std::vector<Vertex>>());
    cert.goodTour = Tour(j.at("good_tour").get<std::vector<Vertex>>());
    cert.badStage1 = j.at("bad_stage_costs").at(0).get<double>();
    cert.badStage2 = j.at("bad_stage_costs").at(1).get<double>();
    cert.goodStage1 = j.at("good_stage_costs").at(0).get<double>();
    cert.goodStage2 = j.at("good_stage_costs").at(1).get<double>();
    cert.badValue = j.at("bad_value").get<double>();
    cert.goodValue = j.at("good_value").get<double>();
    cert.expectedBadPerStage = j.at("expected").at("bad_per_stage").get<double>();
    cert.expectedGoodPerStage = j.at("expected").at("good_per_stage").get<double>();
    cert.adversarialSeed = j.at("adversarial_seed").get<std::uint64_t>();
    cert.instance = Instance({euclideanMatrix(cert.points1), euclideanMatrix(cert.points2)},
                             cert.q);
    return cert;
  } catch (const json::exception& err) {
    throw InputError(path + ": " + err.what());
  }
}

void writeParisStar(const Component& star, const DistanceMatrix& d, const std::string& path) {
  json j;
  j["version"] = 1;
  j["type"] = "paris-star";
  j["n"] = static_cast<int>(star.vertices.size()) - 1;
  j["hub"] = 0;
  j["component"] = {{"vertices", star.vertices}, {"edges", edgesToJson(star.edges)}};
  j["metric"] = matrixToJson(d);
  saveJsonFile(j, path);
}

}  // namespace recovtsp
