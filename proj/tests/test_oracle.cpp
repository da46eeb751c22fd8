#include <doctest.h>

#include "recovtsp/instances.hpp"
#include "recovtsp/oracle.hpp"
#include "test_util.hpp"

using namespace recovtsp;

namespace {

DistanceMatrix unitMetric(int n) {
  DistanceMatrix d(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) d.set(u, v, 1.0);
  return d;
}

}  // namespace

TEST_CASE("tspExact: unit metric and the unique triangle") {
  CHECK(tspExact(unitMetric(6)).cost == 6.0);
  DistanceMatrix tri(3);
  tri.set(0, 1, 1);
  tri.set(0, 2, 2);
  tri.set(1, 2, 3);
  TspResult r = tspExact(tri);
  CHECK(r.cost == 6.0);
  CHECK(r.tour.order() == std::vector<Vertex>{0, 1, 2});
}

TEST_CASE("tspExact matches exhaustive enumeration") {
  for (std::uint64_t seed = 40; seed < 50; ++seed) {
    const int n = 5 + static_cast<int>(seed % 5);
    Instance inst = genRandomMetric(n, seed);
    TspResult dp = tspExact(inst.metric(0));
    TspResult brute = tspExhaustive(inst.metric(0));
    CHECK(dp.cost == brute.cost);
    CHECK(dp.tour.order() == brute.tour.order());
    CHECK(dp.tour.order()[0] == 0);
    CHECK(dp.tour.order()[1] < dp.tour.order().back());
  }
}

TEST_CASE("tspExact budget refusal") {
  CHECK_THROWS_AS(tspExact(unitMetric(16)), BudgetExceeded);
  CHECK_THROWS_AS(tspExhaustive(unitMetric(10)), BudgetExceeded);
}

TEST_CASE("recovTspBruteforce: n = 3 has one tour") {
  DistanceMatrix d1(3), d2(3);
  d1.set(0, 1, 1);
  d1.set(0, 2, 2);
  d1.set(1, 2, 3);
  d2.set(0, 1, 2);
  d2.set(0, 2, 1);
  d2.set(1, 2, 2);
  for (int q = 0; q <= 3; ++q) {
    Instance inst({d1, d2}, q);
    RecovTspResult r = recovTspBruteforce(inst);
    CHECK(r.value == 6.0 + 5.0);
    CHECK(r.tours[0].order() == std::vector<Vertex>{0, 1, 2});
    CHECK(r.tours[1].order() == std::vector<Vertex>{0, 1, 2});
  }
}

TEST_CASE("recovTspBruteforce: q = 0 decouples, q = n forces equal tours") {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    const int n = 5 + static_cast<int>(seed % 2);
    Instance decoupled = genRandomMetric(n, seed, 0);
    RecovTspResult r0 = recovTspBruteforce(decoupled);
    CHECK(r0.value == doctest::Approx(tspExact(decoupled.metric(0)).cost +
                                      tspExact(decoupled.metric(1)).cost)
                          .epsilon(1e-12));

    Instance forced = genRandomMetric(n, seed, n);
    RecovTspResult rn = recovTspBruteforce(forced);
    CHECK(rn.tours[0].order() == rn.tours[1].order());
    DistanceMatrix combined = combineMetrics(forced.metric(0), forced.metric(1));
    CHECK(rn.value == doctest::Approx(tspExact(combined).cost).epsilon(1e-12));
  }
}

TEST_CASE("recovTspBruteforce is monotone nondecreasing in q") {
  Instance base = genRandomMetric(6, 77);
  double prev = -1.0;
  for (int q = 0; q <= 6; ++q) {
    Instance inst({base.metric(0), base.metric(1)}, q);
    RecovTspResult r = recovTspBruteforce(inst);
    CHECK(r.value >= prev - 1e-12);
    prev = r.value;
  }
}

TEST_CASE("recovTspBruteforce budgets are refusals") {
  Instance tooBig = genRandomMetric(9, 0);
  CHECK_THROWS_AS(recovTspBruteforce(tooBig), BudgetExceeded);
  Instance threeStage = genRandomMetric(7, 0, 1, 3);
  CHECK_THROWS_AS(recovTspBruteforce(threeStage), BudgetExceeded);
}

TEST_CASE("hamiltonPathExact: two vertices, line metric, hub star") {
  DistanceMatrix d = unitMetric(5);
  auto two = hamiltonPathExact(d, {1, 3});
  CHECK(two.cost == 1.0);
  CHECK(two.path.order == std::vector<Vertex>{1, 3});

  // Line of 6 points: the geodesic order is the cheapest path.
  DistanceMatrix line(6);
  for (int u = 0; u < 6; ++u)
    for (int v = u + 1; v < 6; ++v) line.set(u, v, static_cast<double>(v - u));
  auto geo = hamiltonPathExact(line, {0, 1, 2, 3, 4, 5});
  CHECK(geo.cost == 5.0);
  CHECK(geo.path.order == std::vector<Vertex>{0, 1, 2, 3, 4, 5});

  // Hub star under d1+d2: minimum Hamilton path costs 4n-4, exactly.
  for (int n = 2; n <= 9; ++n) {
    auto [star, metric] = genParisStar(n);
    DistanceMatrix combined = combineMetrics(metric, metric);
    auto best = hamiltonPathExact(combined, star.vertices);
    CHECK(best.cost == 4.0 * n - 4.0);
  }

  CHECK_THROWS_AS(hamiltonPathExact(unitMetric(13), {0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12}),
                  BudgetExceeded);
}
