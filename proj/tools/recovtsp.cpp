// Command-line surface: generate instances, solve them, validate files, and
// run experiment sweeps with machine-readable CSV reports.
//
// Exit codes: 0 success, 1 invalid input or infeasible, 2 violated internal
// certificate.

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "recovtsp/approx.hpp"
#include "recovtsp/core.hpp"
#include "recovtsp/instances.hpp"
#include "recovtsp/oracle.hpp"
#include "recovtsp/recov_st.hpp"

using namespace recovtsp;
using nlohmann::json;

namespace {

std::string fmt(double x) {
  std::ostringstream out;
  out.precision(12);
  out << x;
  return out.str();
}

long long elapsedMs(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() -
                                                               start)
      .count();
}

int defaultJobs() {
  if (const char* env = std::getenv("RECOVTSP_JOBS")) {
    const int jobs = std::atoi(env);
    if (jobs >= 1) return jobs;
  }
  return 1;
}

struct SolveOutcome {
  std::vector<std::vector<Vertex>> tours;
  std::vector<double> stageCosts;
  double value = 0.0;
  int intersection = 0;
  std::string guarantee;
  std::vector<std::pair<std::string, double>> certificate;
  // Chain slacks for the report; negative entries would have thrown already.
  std::optional<double> slackWalk, slackTree, slackSt;
};

SolveOutcome runAlgorithm(const Instance& inst, const std::string& algorithm,
                          std::uint64_t adversarialSeed, bool haveAdversarialSeed,
                          bool forceNonmetric, std::uint64_t budget, bool verify) {
  SolveOutcome out;
  ChoicePolicy policy;
  policy.adversarial = haveAdversarialSeed;
  policy.seed = adversarialSeed;

  auto fillTours = [&](const std::vector<Tour>& tours) {
    std::vector<EdgeSet> sets;
    for (int s = 0; s < static_cast<int>(tours.size()); ++s) {
      out.tours.push_back(tours[static_cast<std::size_t>(s)].order());
      out.stageCosts.push_back(tourCost(inst.metric(s), tours[static_cast<std::size_t>(s)]));
      sets.push_back(tourEdges(tours[static_cast<std::size_t>(s)]));
    }
    out.intersection = static_cast<int>(mutualIntersection(sets).size());
  };

  if (algorithm == "approx4") {
    Approx4Options opts;
    opts.policy = policy;
    opts.forceNonmetric = forceNonmetric;
    opts.verifyCertificate = verify;
    opts.stBudget = budget;
    opts.onStBudget = BudgetFallback::Heuristic;
    Approx4Result result = solveApprox4(inst, opts);
    fillTours(result.tours);
    out.value = result.value;
    out.guarantee = result.guarantee;
    const StageCosts& sc = result.chain.stageCosts;
    out.certificate = {{"sum_tour_costs", sc.tours},
                       {"sum_walk_costs", sc.walks},
                       {"twice_substituted_tree_costs", sc.treesTwice},
                       {"four_times_spanning_tree_costs", sc.stFour}};
    out.slackWalk = sc.walks - sc.tours;
    out.slackTree = sc.treesTwice - sc.walks;
    out.slackSt = sc.stFour - sc.treesTwice;
  } else if (algorithm == "enum2") {
    Enum2Options opts;
    opts.policy = policy;
    opts.forceNonmetric = forceNonmetric;
    opts.verifyCertificate = verify;
    opts.candidateBudget = budget;
    Enum2Result result = solveEnum2(inst, opts);
    fillTours(result.tours);
    out.value = result.value;
    out.guarantee = result.guarantee;
    out.certificate = {{"sum_tour_costs", result.value},
                       {"forced_tree_bound", result.treeBound},
                       {"min_forced_tree_bound", result.minTreeBound},
                       {"candidates", static_cast<double>(result.candidates)}};
    out.slackTree = 2.0 * result.treeBound - result.value;
  } else if (algorithm == "oracle") {
    RecovTspResult result = recovTspBruteforce(inst);
    fillTours(result.tours);
    out.value = result.value;
    out.guarantee = "exact";
  } else {
    throw InputError("unknown algorithm '" + algorithm + "'");
  }
  if (!verify) out.guarantee += " (unverified)";
  return out;
}

// ---- generate ----

int cmdGenerate(const std::string& kind, int n, std::uint64_t seed, std::optional<int> q,
                int k, double eps, const std::string& outPath, std::string certPath) {
  if (kind == "euclidean" || kind == "random-metric") {
    Instance inst = kind == "euclidean" ? genEuclidean(n, seed, q, k)
                                        : genRandomMetric(n, seed, q, k);
    writeInstance(inst, outPath);
    std::cout << kind << " n=" << inst.n() << " q=" << inst.q() << " k=" << inst.stages()
              << " -> " << outPath << "\n";
  } else if (kind == "tight-family") {
    TightFamilyCertificate cert = genTightFamily(k, eps);
    InstanceDocument doc;
    doc.n = cert.n;
    doc.q = cert.q;
    doc.metrics = {MetricSpec::euclidean(cert.points1), MetricSpec::euclidean(cert.points2)};
    writeInstanceDocument(doc, outPath);
    if (certPath.empty()) certPath = outPath + ".cert.json";
    writeTightCertificate(cert, certPath);
    std::cout << "tight-family k=" << cert.k << " n=" << cert.n << " q=" << cert.q << " -> "
              << outPath << " (certificate " << certPath << ")\n";
  } else if (kind == "paris-star") {
    auto [star, metric] = genParisStar(n);
    writeParisStar(star, metric, outPath);
    std::cout << "paris-star n=" << n << " -> " << outPath << "\n";
  } else {
    throw InputError("unknown generator kind '" + kind + "'");
  }
  return 0;
}

// ---- solve ----

int cmdSolve(const std::string& inPath, const std::string& algorithm, const std::string& outPath,
             std::optional<std::uint64_t> adversarialSeed, bool forceNonmetric,
             std::uint64_t budget, bool noVerify) {
  const Instance inst = readInstance(inPath);
  const auto start = std::chrono::steady_clock::now();

  if (algorithm == "recov-st") {
    if (inst.stages() != 2) throw InputError("recov-st handles exactly two stages");
    if (inst.q() > inst.n() - 1)
      throw InputError("recov-st needs q <= n-1 (a spanning tree has n-1 edges)");
    TreePair pair;
    std::string guarantee = "exact";
    try {
      RecovStOptions opts;
      opts.workBudget = budget;
      pair = recovStExact(inst.metric(0), inst.metric(1), inst.q(), opts);
    } catch (const BudgetExceeded&) {
      pair = recovStHeuristic(inst.metric(0), inst.metric(1), inst.q());
      guarantee = "heuristic";
    }
    if (!outPath.empty()) {
      json j;
      j["trees"] = json::array();
      for (const EdgeSet* t : {&pair.t1, &pair.t2}) {
        json edges = json::array();
        for (const Edge& e : *t) edges.push_back(json::array({e.u, e.v}));
        j["trees"].push_back(std::move(edges));
      }
      j["value"] = pair.value;
      json inter = json::array();
      for (const Edge& e : pair.intersection) inter.push_back(json::array({e.u, e.v}));
      j["intersection"] = std::move(inter);
      j["guarantee"] = guarantee;
      std::ofstream(outPath) << j.dump(2) << '\n';
    }
    std::cout << algorithm << ' ' << fmt(pair.value) << ' ' << pair.intersection.size() << ' '
              << guarantee << ' ' << elapsedMs(start) << "\n";
    return 0;
  }

  SolveOutcome outcome = runAlgorithm(inst, algorithm, adversarialSeed.value_or(0),
                                      adversarialSeed.has_value(), forceNonmetric, budget,
                                      !noVerify);
  if (!outPath.empty()) {
    SolutionDocument sol;
    sol.tours = outcome.tours;
    sol.stageCosts = outcome.stageCosts;
    sol.total = outcome.value;
    std::vector<EdgeSet> sets;
    for (const auto& t : outcome.tours) sets.push_back(tourEdges(Tour(t)));
    for (const Edge& e : mutualIntersection(sets)) sol.intersection.push_back({e.u, e.v});
    sol.certificate = outcome.certificate;
    sol.guarantee = outcome.guarantee;
    writeSolution(sol, outPath);
  }
  std::cout << algorithm << ' ' << fmt(outcome.value) << ' ' << outcome.intersection << ' '
            << outcome.guarantee << ' ' << elapsedMs(start) << "\n";
  return 0;
}

// ---- validate ----

int cmdValidate(const std::string& inPath, const std::string& solutionPath) {
  const Instance inst = readInstance(inPath);
  bool allOk = true;
  for (int s = 0; s < inst.stages(); ++s) {
    MetricReport report = validateMetric(inst.metric(s));
    std::cout << "stage " << s << ": symmetric=" << (report.symmetric ? "yes" : "no")
              << " nonnegative=" << (report.nonnegative ? "yes" : "no")
              << " zero-diagonal=" << (report.zeroDiagonal ? "yes" : "no")
              << " triangle-violations=" << report.violations.size() << "\n";
    for (std::size_t i = 0; i < report.violations.size() && i < 5; ++i) {
      const TriangleViolation& tv = report.violations[i];
      std::cout << "  d(" << tv.u << "," << tv.w << ") > d(" << tv.u << "," << tv.v << ") + d("
                << tv.v << "," << tv.w << ") by " << fmt(tv.slack) << "\n";
    }
    allOk = allOk && report.metric();
  }
  if (!solutionPath.empty()) {
    SolutionDocument sol = readSolution(solutionPath);
    FeasibilityVerdict verdict = checkSolutionRaw(inst, sol.tours);
    std::cout << "solution: feasible=" << (verdict.feasible ? "yes" : "no")
              << " intersection=" << verdict.intersectionSize << "\n";
    for (const std::string& v : verdict.violations) std::cout << "  " << v << "\n";
    allOk = allOk && verdict.feasible;
  }
  return allOk ? 0 : 1;
}

// ---- experiment ----

struct ReportRow {
  std::string generator;
  int n = 0, k = 0, q = 0;
  std::string seed;
  std::string algorithm;
  std::string value, oracleValue, ratio;
  std::string slackWalk, slackTree, slackSt;
  std::string intersection;
  std::string guarantee;
  long long runtimeMs = 0;
};

struct ExperimentTask {
  std::size_t row;
  json spec;
  std::string algorithm;  // or "certificate" for tight-family reference rows
  bool oracle = false;
  std::uint64_t budget = 0;
  bool verify = true;
};

ReportRow runTask(const ExperimentTask& task) {
  ReportRow row;
  const auto start = std::chrono::steady_clock::now();
  const json& spec = task.spec;

  if (spec.contains("generator") && spec.at("generator") == "tight-family") {
    const int k = spec.at("k").get<int>();
    const double eps = spec.value("eps", 1e-4);
    TightFamilyCertificate cert = genTightFamily(k, eps);
    row.generator = "tight-family";
    row.n = cert.n;
    row.k = 2;
    row.q = cert.q;
    row.seed = "";
    if (task.algorithm == "certificate") {
      row.algorithm = "certificate";
      row.value = fmt(cert.badValue);
      row.oracleValue = fmt(cert.goodValue);
      row.ratio = fmt(cert.badValue / cert.goodValue);
      row.intersection = std::to_string(cert.intersection.size());
      row.guarantee = "tight-family";
    } else {
      SolveOutcome outcome = runAlgorithm(cert.instance, task.algorithm, 0, false, false,
                                          task.budget, task.verify);
      row.algorithm = task.algorithm;
      row.value = fmt(outcome.value);
      row.oracleValue = fmt(cert.goodValue);
      row.ratio = fmt(outcome.value / cert.goodValue);
      if (outcome.slackWalk) row.slackWalk = fmt(*outcome.slackWalk);
      if (outcome.slackTree) row.slackTree = fmt(*outcome.slackTree);
      if (outcome.slackSt) row.slackSt = fmt(*outcome.slackSt);
      row.intersection = std::to_string(outcome.intersection);
      row.guarantee = outcome.guarantee;
    }
    row.runtimeMs = elapsedMs(start);
    return row;
  }

  Instance inst;
  if (spec.contains("file")) {
    inst = readInstance(spec.at("file").get<std::string>());
    row.generator = "file";
  } else {
    const std::string gen = spec.at("generator").get<std::string>();
    const int n = spec.at("n").get<int>();
    const std::uint64_t seed = spec.value("seed", 0ULL);
    std::optional<int> q;
    if (spec.contains("q")) q = spec.at("q").get<int>();
    const int stages = spec.value("k", 2);
    inst = gen == "euclidean" ? genEuclidean(n, seed, q, stages)
         : gen == "random-metric" ? genRandomMetric(n, seed, q, stages)
         : throw InputError("unknown generator '" + gen + "' in experiment config");
    row.generator = gen;
    row.seed = std::to_string(seed);
  }
  row.n = inst.n();
  row.k = inst.stages();
  row.q = inst.q();
  row.algorithm = task.algorithm;

  SolveOutcome outcome =
      runAlgorithm(inst, task.algorithm, 0, false, false, task.budget, task.verify);
  row.value = fmt(outcome.value);
  if (outcome.slackWalk) row.slackWalk = fmt(*outcome.slackWalk);
  if (outcome.slackTree) row.slackTree = fmt(*outcome.slackTree);
  if (outcome.slackSt) row.slackSt = fmt(*outcome.slackSt);
  row.intersection = std::to_string(outcome.intersection);
  row.guarantee = outcome.guarantee;

  if (task.oracle) {
    RecovTspResult oracle = recovTspBruteforce(inst);
    row.oracleValue = fmt(oracle.value);
    row.ratio = fmt(outcome.value / oracle.value);
  }
  row.runtimeMs = elapsedMs(start);
  return row;
}

int cmdExperiment(const std::string& configPath, const std::string& outPath, int jobsOverride,
                  bool noVerify) {
  std::ifstream in(configPath);
  if (!in) throw InputError("cannot open config: " + configPath);
  json config;
  try {
    config = json::parse(in);
  } catch (const json::parse_error& err) {
    throw InputError(configPath + ": " + err.what());
  }

  const bool oracle = config.value("oracle", false);
  const std::uint64_t budget = config.value("budget", 50'000'000ULL);
  std::vector<std::string> algorithms =
      config.value("algorithms", std::vector<std::string>{"approx4"});
  int jobs = jobsOverride > 0 ? jobsOverride : config.value("jobs", defaultJobs());

  std::vector<ExperimentTask> tasks;
  for (const auto& spec : config.at("instances")) {
    const bool tight = spec.contains("generator") && spec.at("generator") == "tight-family";
    if (tight) {
      tasks.push_back({tasks.size(), spec, "certificate", false, budget, !noVerify});
      continue;
    }
    for (const std::string& algorithm : algorithms)
      tasks.push_back({tasks.size(), spec, algorithm, oracle, budget, !noVerify});
  }

  std::vector<ReportRow> rows(tasks.size());
  std::exception_ptr firstError;
  std::atomic<std::size_t> nextTask{0};
  std::atomic<bool> failed{false};
  auto worker = [&] {
    while (!failed.load()) {
      const std::size_t i = nextTask.fetch_add(1);
      if (i >= tasks.size()) return;
      try {
        rows[tasks[i].row] = runTask(tasks[i]);
      } catch (...) {
        if (!failed.exchange(true)) firstError = std::current_exception();
        return;
      }
    }
  };
  jobs = std::max(1, std::min<int>(jobs, static_cast<int>(tasks.size())));
  std::vector<std::thread> pool;
  for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (firstError) std::rethrow_exception(firstError);

  std::ostringstream csv;
  csv << "# recovtsp experiment report v1\n";
  if (noVerify) csv << "# verification: off (untrusted timings-only run)\n";
  csv << "index,generator,n,k,q,seed,algorithm,value,oracle_value,ratio,"
         "slack_walk,slack_tree,slack_st,intersection,guarantee,runtime_ms\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const ReportRow& r = rows[i];
    csv << i << ',' << r.generator << ',' << r.n << ',' << r.k << ',' << r.q << ',' << r.seed
        << ',' << r.algorithm << ',' << r.value << ',' << r.oracleValue << ',' << r.ratio << ','
        << r.slackWalk << ',' << r.slackTree << ',' << r.slackSt << ',' << r.intersection << ','
        << r.guarantee << ',' << r.runtimeMs << '\n';
  }
  if (outPath.empty() || outPath == "-") {
    std::cout << csv.str();
  } else {
    std::ofstream out(outPath);
    if (!out) throw InputError("cannot write report: " + outPath);
    out << csv.str();
    std::cout << "wrote " << rows.size() << " rows -> " << outPath << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"recoverable traveling salesman toolkit"};
  app.require_subcommand(1);

  // generate
  auto* generate = app.add_subcommand("generate", "generate an instance file");
  std::string genKind, genOut, genCertOut;
  int genN = 8, genK = 2;
  std::uint64_t genSeed = 0;
  double genEps = 1e-3;
  int genQRaw = -1;
  generate->add_option("kind", genKind, "euclidean | random-metric | tight-family | paris-star")
      ->required();
  generate->add_option("--n", genN, "vertex count (euclidean, random-metric, paris-star)");
  generate->add_option("--seed", genSeed, "generator seed");
  generate->add_option("--q", genQRaw, "intersection size parameter (default ceil(n/2))");
  generate->add_option("--k", genK, "stage count, or grid columns for tight-family");
  generate->add_option("--eps", genEps, "tight-family epsilon (0 < eps < 1/k^2)");
  generate->add_option("--out", genOut, "output path")->required();
  generate->add_option("--cert-out", genCertOut, "tight-family certificate path");

  // solve
  auto* solve = app.add_subcommand("solve", "solve an instance file");
  std::string solveIn, solveAlg = "approx4", solveOut;
  std::uint64_t solveSeed = 0, solveBudget = 50'000'000;
  bool solveForce = false, solveNoVerify = false;
  bool haveSeed = false;
  solve->add_option("input", solveIn, "instance file")->required();
  solve->add_option("--algorithm", solveAlg, "approx4 | enum2 | oracle | recov-st");
  solve->add_option("--out", solveOut, "solution file path");
  auto* seedOpt = solve->add_option("--adversarial-seed", solveSeed,
                                    "permute pipeline choice orders with this seed");
  solve->add_flag("--force-nonmetric", solveForce, "run on non-metric input; guarantees void");
  solve->add_option("--budget", solveBudget, "work budget (search nodes / candidates)");
  solve->add_flag("--no-verify", solveNoVerify,
                  "skip certificate verification (timing runs only; output marked unverified)");

  // experiment
  auto* experiment = app.add_subcommand("experiment", "run a config-driven sweep, emit CSV");
  std::string expConfig, expOut;
  int expJobs = 0;
  bool expNoVerify = false;
  experiment->add_option("config", expConfig, "JSON config file")->required();
  experiment->add_option("--out", expOut, "CSV output path ('-' for stdout)");
  experiment->add_option("--jobs", expJobs, "parallel jobs (default RECOVTSP_JOBS or 1)");
  experiment->add_flag("--no-verify", expNoVerify, "skip certificate verification (untrusted)");

  // validate
  auto* validate = app.add_subcommand("validate", "validate instance and solution files");
  std::string valIn, valSolution;
  validate->add_option("input", valIn, "instance file")->required();
  validate->add_option("--solution", valSolution, "solution file to check");

  CLI11_PARSE(app, argc, argv);

  try {
    if (generate->parsed()) {
      std::optional<int> q;
      if (genQRaw >= 0) q = genQRaw;
      return cmdGenerate(genKind, genN, genSeed, q, genK, genEps, genOut, genCertOut);
    }
    if (solve->parsed()) {
      haveSeed = seedOpt->count() > 0;
      return cmdSolve(solveIn, solveAlg, solveOut,
                      haveSeed ? std::optional<std::uint64_t>(solveSeed) : std::nullopt,
                      solveForce, solveBudget, solveNoVerify);
    }
    if (experiment->parsed()) return cmdExperiment(expConfig, expOut, expJobs, expNoVerify);
    if (validate->parsed()) return cmdValidate(valIn, valSolution);
  } catch (const CertificateViolation& err) {
    std::cerr << "certificate violation: " << err.what() << "\n";
    return 2;
  } catch (const InputError& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 1;
  } catch (const BudgetExceeded& err) {
    std::cerr << "refused: " << err.what() << "\n";
    return 1;
  } catch (const std::exception& err) {
    std::cerr << "internal error: " << err.what() << "\n";
    return 2;
  }
  return 0;
}
