#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "recovtsp/approx.hpp"
#include "recovtsp/core.hpp"
#include "recovtsp/graphkit.hpp"

namespace recovtsp {

using Point = std::array<double, 2>;

/// One stage's metric as it appears in an instance file: either an explicit
/// matrix or a 2D point set whose Euclidean distances define it.
struct MetricSpec {
  enum class Kind { Explicit, Euclidean };
  Kind kind = Kind::Explicit;
  std::vector<std::vector<double>> rows;  // Kind::Explicit
  std::vector<Point> points;              // Kind::Euclidean

  DistanceMatrix toMatrix() const;
  static MetricSpec explicitMatrix(const DistanceMatrix& d);
  static MetricSpec euclidean(std::vector<Point> pts);
};

/// Self-describing instance document (schema version 1).
struct InstanceDocument {
  int n = 0;
  int q = 0;
  std::vector<MetricSpec> metrics;

  Instance toInstance() const;
};

/// Two independent uniform point sets in [0,1]^2; metrics are Euclidean.
/// q defaults to ceil(n/2).
Instance genEuclidean(int n, std::uint64_t seed, std::optional<int> q = std::nullopt,
                      int stages = 2);

/// Uniform edge weights in [1,2] per stage followed by all-pairs
/// shortest-path closure (a no-op for this range, which already satisfies
/// the triangle inequality). q defaults to ceil(n/2).
Instance genRandomMetric(int n, std::uint64_t seed, std::optional<int> q = std::nullopt,
                         int stages = 2);

/// Everything the tightness construction certifies at generation time.
struct TightFamilyCertificate {
  int k = 0;
  double eps = 0.0;
  int n = 0;
  int q = 0;  // 12k - 1
  std::vector<Point> points1, points2;
  Instance instance;

  EdgeSet t1, t2;          // unique per-stage MSTs
  EdgeSet intersection;    // single connected component, size q
  Path componentPath;      // P: double-tree Hamilton path over the component
  Tour badTour1, badTour2; // worst-case output pair (identical tours)
  Tour goodTour;           // serpentine reference tour
  double badStage1 = 0, badStage2 = 0;   // d1(badTour1), d2(badTour2)
  double goodStage1 = 0, goodStage2 = 0; // d1(goodTour), d2(goodTour)
  double badValue = 0, goodValue = 0;
  double expectedBadPerStage = 0;   // 8k - 4
  double expectedGoodPerStage = 0;  // 2k
  /// Seed for the pipeline choice policy that reproduces badTour1 through
  /// the stage-1 pipeline. 0 means the default deterministic order already
  /// does (the instance's vertex numbering realizes the adversarial
  /// preorder).
  std::uint64_t adversarialSeed = 0;
};

/// The 2xk satellite-gadget grid with 2k-1 helper vertices and q = 12k-1.
/// Requires k >= 2 and 0 < eps < 1/k^2. The certificate is re-verified at
/// generation time (MST uniqueness, intersection size and connectivity,
/// pipeline reproduction of the bad tour).
TightFamilyCertificate genTightFamily(int k, double eps);

/// Star on n+1 vertices centered at vertex 0 under the hub metric
/// d(x,y) = 1 if 0 in {x,y} else 2 (both stages equal). Certifies the
/// tightness of the double-tree substitution bound.
std::pair<Component, DistanceMatrix> genParisStar(int n);

/// Per-edge cost intervals [lower_e, upper_e], 0 <= lower <= upper.
struct UncertaintyIntervals {
  DistanceMatrix lower;
  DistanceMatrix upper;
};

/// Worst case of interval uncertainty: every cost at its upper bound. The
/// result is paired with a first-stage matrix by the caller to form a
/// deterministic recoverable instance.
DistanceMatrix reduceIntervalUncertainty(const UncertaintyIntervals& intervals);

// ---- File I/O (UTF-8 JSON, schemas in README) ----

InstanceDocument readInstanceDocument(const std::string& path);
Instance readInstance(const std::string& path);
void writeInstanceDocument(const InstanceDocument& doc, const std::string& path);
/// Writes with explicit-matrix encoding.
void writeInstance(const Instance& inst, const std::string& path);

struct SolutionDocument {
  std::vector<std::vector<Vertex>> tours;
  std::vector<double> stageCosts;
  double total = 0.0;
  std::vector<std::array<Vertex, 2>> intersection;
  // Certificate chain costs; empty for oracle solutions.
  std::vector<std::pair<std::string, double>> certificate;
  std::string guarantee;
};

void writeSolution(const SolutionDocument& sol, const std::string& path);
SolutionDocument readSolution(const std::string& path);

UncertaintyIntervals readIntervals(const std::string& path);
void writeIntervals(const UncertaintyIntervals& intervals, const std::string& path);

void writeTightCertificate(const TightFamilyCertificate& cert, const std::string& path);
TightFamilyCertificate readTightCertificate(const std::string& path);

void writeParisStar(const Component& star, const DistanceMatrix& d, const std::string& path);

}  // namespace recovtsp
