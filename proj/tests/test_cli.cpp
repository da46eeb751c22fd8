#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "recovtsp/instances.hpp"

using namespace recovtsp;

namespace {

const char* kCli = RECOVTSP_CLI_PATH;

struct RunResult {
  int exitCode;
  std::string stdoutText;
};

RunResult run(const std::string& args) {
  const std::string outFile =
      (std::filesystem::temp_directory_path() / "recovtsp_cli_stdout.txt").string();
  const std::string cmd = std::string(kCli) + " " + args + " > " + outFile + " 2>&1";
  const int raw = std::system(cmd.c_str());
  std::ifstream in(outFile);
  std::stringstream buffer;
  buffer << in.rdbuf();
  std::remove(outFile.c_str());
  return {WEXITSTATUS(raw), buffer.str()};
}

std::string tmpFile(const std::string& name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

/// Strips the trailing runtime_ms column from every CSV data row.
std::string withoutRuntime(const std::string& csv) {
  std::istringstream in(csv);
  std::ostringstream out;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] != '#') {
      const auto cut = line.rfind(',');
      if (cut != std::string::npos) line.resize(cut);
    }
    out << line << '\n';
  }
  return out.str();
}

}  // namespace

TEST_CASE("cli: generate tight-family reports n=59 q=35 and writes both files") {
  const std::string inst = tmpFile("cli_tight.json");
  const std::string cert = tmpFile("cli_tight.cert.json");
  RunResult r = run("generate tight-family --k 3 --eps 0.001 --out " + inst + " --cert-out " + cert);
  CHECK(r.exitCode == 0);
  CHECK(r.stdoutText.find("n=59") != std::string::npos);
  CHECK(r.stdoutText.find("q=35") != std::string::npos);
  Instance parsed = readInstance(inst);
  CHECK(parsed.n() == 59);
  CHECK(parsed.q() == 35);
  TightFamilyCertificate back = readTightCertificate(cert);
  CHECK(back.k == 3);
  std::remove(inst.c_str());
  std::remove(cert.c_str());
}

TEST_CASE("cli: generate euclidean and paris-star") {
  const std::string inst = tmpFile("cli_euclid.json");
  CHECK(run("generate euclidean --n 8 --seed 7 --out " + inst).exitCode == 0);
  Instance parsed = readInstance(inst);
  CHECK(parsed.n() == 8);
  CHECK(validateMetric(parsed.metric(0)).metric());
  std::remove(inst.c_str());

  const std::string star = tmpFile("cli_star.json");
  CHECK(run("generate paris-star --n 6 --out " + star).exitCode == 0);
  CHECK(std::filesystem::exists(star));
  std::remove(star.c_str());

  CHECK(run("generate nonsense --n 4 --out " + inst).exitCode == 1);
}

TEST_CASE("cli: solve approx4 on the unit metric prints total 10 and 4-approx") {
  // Unit metric both stages, n = 5, q = 3: every tour costs n, total 2n = 10.
  const std::string inst = tmpFile("cli_unit.json");
  {
    InstanceDocument doc;
    doc.n = 5;
    doc.q = 3;
    std::vector<std::vector<double>> rows(5, std::vector<double>(5, 1.0));
    for (int i = 0; i < 5; ++i) rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 0.0;
    MetricSpec spec;
    spec.kind = MetricSpec::Kind::Explicit;
    spec.rows = rows;
    doc.metrics = {spec, spec};
    writeInstanceDocument(doc, inst);
  }
  const std::string sol = tmpFile("cli_unit_sol.json");
  RunResult r = run("solve " + inst + " --algorithm approx4 --out " + sol);
  CHECK(r.exitCode == 0);
  std::istringstream line(r.stdoutText);
  std::string algorithm, value, intersection, guarantee;
  line >> algorithm >> value >> intersection >> guarantee;
  CHECK(algorithm == "approx4");
  CHECK(value == "10");
  CHECK(guarantee == "4-approx");

  SolutionDocument doc = readSolution(sol);
  CHECK(doc.total == 10.0);
  CHECK(doc.guarantee == "4-approx");
  Instance parsed = readInstance(inst);
  CHECK(checkSolutionRaw(parsed, doc.tours).feasible);
  std::remove(sol.c_str());

  // Oracle on the same instance agrees with the summary-line contract.
  RunResult oracle = run("solve " + inst + " --algorithm oracle");
  CHECK(oracle.exitCode == 0);
  CHECK(oracle.stdoutText.rfind("oracle 10 ", 0) == 0);

  RunResult st = run("solve " + inst + " --algorithm recov-st");
  CHECK(st.exitCode == 0);
  CHECK(st.stdoutText.find("exact") != std::string::npos);

  std::remove(inst.c_str());
}

TEST_CASE("cli: enum2 value is at most twice the oracle value") {
  const std::string inst = tmpFile("cli_enum2.json");
  writeInstance(genRandomMetric(6, 11, 2), inst);
  RunResult enum2 = run("solve " + inst + " --algorithm enum2");
  RunResult oracle = run("solve " + inst + " --algorithm oracle");
  REQUIRE(enum2.exitCode == 0);
  REQUIRE(oracle.exitCode == 0);
  auto value = [](const RunResult& r) {
    std::istringstream in(r.stdoutText);
    std::string algorithm;
    double v;
    in >> algorithm >> v;
    return v;
  };
  CHECK(value(enum2) <= 2.0 * value(oracle) * (1 + 1e-9));
  std::remove(inst.c_str());
}

TEST_CASE("cli: infeasible and invalid inputs exit 1") {
  const std::string inst = tmpFile("cli_badq.json");
  std::ofstream(inst) << R"({"version":1,"n":4,"q":9,"metrics":[
    {"type":"explicit","matrix":[[0,1,1,1],[1,0,1,1],[1,1,0,1],[1,1,1,0]]},
    {"type":"explicit","matrix":[[0,1,1,1],[1,0,1,1],[1,1,0,1],[1,1,1,0]]}]})";
  CHECK(run("solve " + inst + " --algorithm approx4").exitCode == 1);
  std::remove(inst.c_str());
  CHECK(run("solve /nonexistent.json").exitCode == 1);
}

TEST_CASE("cli: validate reports metric failures and solution feasibility") {
  const std::string inst = tmpFile("cli_nonmetric.json");
  std::ofstream(inst) << R"({"version":1,"n":3,"q":1,"metrics":[
    {"type":"explicit","matrix":[[0,1,9],[1,0,1],[9,1,0]]},
    {"type":"explicit","matrix":[[0,1,1],[1,0,1],[1,1,0]]}]})";
  RunResult r = run("validate " + inst);
  CHECK(r.exitCode == 1);
  CHECK(r.stdoutText.find("triangle-violations=") != std::string::npos);
  std::remove(inst.c_str());
}

TEST_CASE("cli: adversarial seed is honored deterministically") {
  const std::string inst = tmpFile("cli_adv.json");
  writeInstance(genRandomMetric(7, 4, 3), inst);
  RunResult a = run("solve " + inst + " --algorithm approx4 --adversarial-seed 9");
  RunResult b = run("solve " + inst + " --algorithm approx4 --adversarial-seed 9");
  REQUIRE(a.exitCode == 0);
  auto beforeRuntime = [](const std::string& s) { return s.substr(0, s.rfind(' ')); };
  CHECK(beforeRuntime(a.stdoutText) == beforeRuntime(b.stdoutText));
  std::remove(inst.c_str());
}

TEST_CASE("cli: approx4 falls back to the flagged heuristic when RecovST is over budget") {
  const std::string inst = tmpFile("cli_tight_solve.json");
  REQUIRE(run("generate tight-family --k 3 --eps 0.001 --out " + inst).exitCode == 0);
  RunResult r = run("solve " + inst + " --algorithm approx4 --budget 100000");
  CHECK(r.exitCode == 0);
  CHECK(r.stdoutText.find("heuristic") != std::string::npos);
  std::remove(inst.c_str());
  std::remove((inst + ".cert.json").c_str());
}

TEST_CASE("cli: experiment reports are deterministic modulo the runtime column") {
  const std::string config = tmpFile("cli_config.json");
  std::ofstream(config) << R"({
    "oracle": true,
    "algorithms": ["approx4", "enum2"],
    "instances": [
      {"generator": "random-metric", "n": 5, "seed": 1, "q": 2},
      {"generator": "random-metric", "n": 6, "seed": 2, "q": 1},
      {"generator": "tight-family", "k": 2, "eps": 0.001}
    ]
  })";
  const std::string out1 = tmpFile("cli_report1.csv");
  const std::string out2 = tmpFile("cli_report2.csv");
  CHECK(run("experiment " + config + " --out " + out1).exitCode == 0);
  CHECK(run("experiment " + config + " --out " + out2 + " --jobs 2").exitCode == 0);
  std::stringstream a, b;
  a << std::ifstream(out1).rdbuf();
  b << std::ifstream(out2).rdbuf();
  CHECK(withoutRuntime(a.str()) == withoutRuntime(b.str()));
  CHECK(a.str().find("certificate") != std::string::npos);

  // Ratio column: <= 4 on approx4 rows, <= 2 on enum2 rows (oracle-backed).
  std::istringstream lines(a.str());
  std::string line;
  int checkedRows = 0;
  while (std::getline(lines, line)) {
    if (line.empty() || line[0] == '#' || line.rfind("index,", 0) == 0) continue;
    std::vector<std::string> cols;
    std::istringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) cols.push_back(cell);
    REQUIRE(cols.size() == 16);
    const std::string& algorithm = cols[6];
    if (algorithm == "approx4") {
      CHECK(std::stod(cols[9]) <= 4.0 + 1e-9);
      ++checkedRows;
    } else if (algorithm == "enum2") {
      CHECK(std::stod(cols[9]) <= 2.0 + 1e-9);
      ++checkedRows;
    }
  }
  CHECK(checkedRows == 4);
  std::remove(config.c_str());
  std::remove(out1.c_str());
  std::remove(out2.c_str());
}
