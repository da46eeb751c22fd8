#include <doctest.h>

#include "recovtsp/core.hpp"
#include "recovtsp/instances.hpp"
#include "test_util.hpp"

using namespace recovtsp;

namespace {

DistanceMatrix unitMetric(int n) {
  DistanceMatrix d(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) d.set(u, v, 1.0);
  return d;
}

DistanceMatrix triangle(double ab, double ac, double bc) {
  DistanceMatrix d(3);
  d.set(0, 1, ab);
  d.set(0, 2, ac);
  d.set(1, 2, bc);
  return d;
}

}  // namespace

TEST_CASE("validateMetric: unit metric has no violations") {
  MetricReport report = validateMetric(unitMetric(3));
  CHECK(report.metric());
  CHECK(report.violations.empty());
}

TEST_CASE("validateMetric: reports the violating triple with slack") {
  MetricReport report = validateMetric(triangle(1, 3, 1));  // d(a,c)=3 > 1+1
  CHECK_FALSE(report.metric());
  REQUIRE_FALSE(report.violations.empty());
  bool found = false;
  for (const TriangleViolation& v : report.violations)
    if (v.u == 0 && v.v == 1 && v.w == 2) {
      found = true;
      CHECK(v.slack == doctest::Approx(1.0));
    }
  CHECK(found);
}

TEST_CASE("validateMetric: metric-closure instances pass") {
  Instance inst = genRandomMetric(8, 1);
  for (int s = 0; s < inst.stages(); ++s) CHECK(validateMetric(inst.metric(s)).metric());
}

TEST_CASE("validateMetric accepts the shortest-path closure of any nonnegative weights") {
  SplitMix64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 4 + static_cast<int>(rng.nextBelow(6));
    DistanceMatrix d(n);
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v) d.set(u, v, rng.nextDouble(0.1, 5.0));
    for (int via = 0; via < n; ++via)
      for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v)
          if (d(u, via) + d(via, v) < d(u, v)) d.set(u, v, d(u, via) + d(via, v));
    CHECK(validateMetric(d).metric());
  }
}

TEST_CASE("validateMetric: malformed matrices are input errors") {
  CHECK_THROWS_AS(DistanceMatrix::fromRows({{0, 1}, {1}}), InputError);
  CHECK_THROWS_AS(DistanceMatrix::fromRows({{0, std::nan("")}, {1, 0}}), InputError);
}

TEST_CASE("tourCost examples") {
  Tour any({0, 2, 1, 3});
  CHECK(tourCost(unitMetric(4), any) == 4.0);
  CHECK(tourCost(triangle(1, 2, 3), Tour({0, 1, 2})) == 6.0);
  CHECK_THROWS_AS(tourCost(unitMetric(5), any), InputError);
}

TEST_CASE("tourCost is exactly rotation- and reversal-invariant") {
  Instance inst = genRandomMetric(7, 3);
  Tour base({0, 3, 5, 1, 6, 2, 4});
  const double cost = tourCost(inst.metric(0), base);
  CHECK(tourCost(inst.metric(0), base.reversed()) == cost);
  std::vector<Vertex> rotated(base.order().begin() + 2, base.order().end());
  rotated.insert(rotated.end(), base.order().begin(), base.order().begin() + 2);
  CHECK(tourCost(inst.metric(0), Tour(rotated)) == cost);
}

TEST_CASE("tourEdges: triangle, square, reversal") {
  EdgeSet tri = tourEdges(Tour({0, 1, 2}));
  CHECK(tri.size() == 3);
  CHECK(tri.contains(Edge(0, 1)));
  CHECK(tri.contains(Edge(1, 2)));
  CHECK(tri.contains(Edge(0, 2)));
  CHECK(tourEdges(Tour({0, 1, 2, 3})).size() == 4);
  Tour square({0, 1, 2, 3});
  CHECK(tourEdges(square) == tourEdges(square.reversed()));
  CHECK_THROWS_AS(Tour({0, 1}), InputError);
  CHECK_THROWS_AS(Tour({0, 1, 1}), InputError);
}

TEST_CASE("tour edge count equals n on random tours") {
  SplitMix64 rng(11);
  for (int n : {3, 5, 9, 14}) {
    std::vector<Vertex> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    rng.shuffle(order);
    CHECK(tourEdges(Tour(order)).size() == static_cast<std::size_t>(n));
  }
}

TEST_CASE("mutualIntersection") {
  std::vector<EdgeSet> same(3, tourEdges(Tour({0, 1, 2, 3, 4})));
  CHECK(mutualIntersection(same).size() == 5);

  EdgeSet t1{{Edge(0, 1), Edge(1, 2), Edge(0, 2)}};
  EdgeSet t2{{Edge(3, 4), Edge(4, 5), Edge(3, 5)}};
  std::vector<EdgeSet> disjoint{t1, t2};
  CHECK(mutualIntersection(disjoint).empty());

  CHECK_THROWS_AS(mutualIntersection(std::span<const EdgeSet>{}), InputError);
}

TEST_CASE("mutualIntersection is monotone nonincreasing in the number of sets") {
  SplitMix64 rng(5);
  std::vector<EdgeSet> sets;
  for (int i = 0; i < 4; ++i) {
    std::vector<Vertex> order(6);
    std::iota(order.begin(), order.end(), 0);
    rng.shuffle(order);
    sets.push_back(tourEdges(Tour(order)));
  }
  std::size_t prev = sets[0].size();
  for (std::size_t l = 1; l <= sets.size(); ++l) {
    std::span<const EdgeSet> prefix(sets.data(), l);
    const std::size_t size = mutualIntersection(prefix).size();
    CHECK(size <= prev);
    prev = size;
  }
}

TEST_CASE("Instance rejects q > n and mismatched metrics") {
  CHECK_THROWS_AS(Instance({unitMetric(4), unitMetric(4)}, 5), InputError);
  CHECK_THROWS_AS(Instance({unitMetric(4), unitMetric(5)}, 2), InputError);
  CHECK_THROWS_AS(Instance({unitMetric(4)}, 2), InputError);
  Instance ok({unitMetric(4), unitMetric(4)}, 4);  // q = n forces equal tours but is admitted
  CHECK(ok.q() == 4);
  Instance zero({unitMetric(4), unitMetric(4)}, 0);  // q = 0 admitted: constraint vacuous
  CHECK(zero.q() == 0);
}

TEST_CASE("checkSolution verdicts") {
  Instance inst({unitMetric(5), unitMetric(5)}, 3);
  Tour a({0, 1, 2, 3, 4});

  std::vector<Tour> same{a, a};
  FeasibilityVerdict ok = checkSolution(inst, same);
  CHECK(ok.feasible);
  CHECK(ok.intersectionSize == 5);

  // Two tours sharing exactly q-1 = 2 edges ({0,1} and {2,3}): name the deficit.
  Instance tight({unitMetric(5), unitMetric(5)}, 3);
  Tour b({0, 1, 4, 2, 3});
  std::vector<Tour> pair{a, b};
  FeasibilityVerdict verdict = checkSolution(tight, pair);
  REQUIRE(verdict.intersectionSize == 2);
  CHECK_FALSE(verdict.feasible);
  REQUIRE_FALSE(verdict.violations.empty());
  CHECK(verdict.violations.front().find("deficit 1") != std::string::npos);

  FeasibilityVerdict invalid = checkSolutionRaw(inst, {{0, 1, 2, 3, 4}, {0, 1, 2, 3}});
  CHECK_FALSE(invalid.feasible);
}
