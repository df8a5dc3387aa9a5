// Copyright 2026 The spjeso Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
// Command-line front end: scenario validation, single experiments, parameter
// sweeps, numeric theorem verification, and snapshot audit dumps. Exits 0 on
// success; on failure prints one structured JSON error object to stderr and
// exits nonzero.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "spjeso/generator.hpp"
#include "spjeso/harness.hpp"
#include "spjeso/maied.hpp"
#include "spjeso/oracle.hpp"
#include "spjeso/scenario_io.hpp"

namespace {

using spjeso::Json;

spjeso::Scenario loadWithOverrides(const std::string& path,
                                   std::optional<std::uint64_t> seed) {
  spjeso::Scenario sc = spjeso::loadScenario(path);
  if (seed) {
    sc.dist.seed = *seed;
    const auto report = spjeso::finalizeScenario(sc);
    if (!report.ok()) throw spjeso::ValidationError(report);
  }
  return sc;
}

int runValidate(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw spjeso::ScenarioParseError("cannot open scenario file: " + path);
  Json j;
  in >> j;
  spjeso::Scenario sc;
  try {
    sc = spjeso::parseScenario(j);
  } catch (const spjeso::ValidationError& e) {
    std::cout << "invalid scenario: " << path << "\n";
    for (const auto& issue : e.report().issues)
      std::cout << "  " << issue.field << ": " << issue.message << "\n";
    return 1;
  }
  std::cout << "ok: " << path << " (" << sc.esCount() << " base stations, "
            << sc.serviceCount() << " services, " << sc.pairCount()
            << " UE pairs, T=" << sc.time.slotsPerPeriod
            << ", L=" << sc.time.periods << ")\n";
  return 0;
}

int runSingle(const std::string& path, const std::string& methodName, int reps,
              std::optional<std::uint64_t> seed, const std::string& outDir,
              int workers, bool traces) {
  const spjeso::Scenario sc = loadWithOverrides(path, seed);
  spjeso::SweepSpec spec;
  spec.parameter = "none";
  spec.values = {0.0};
  spec.repetitions = reps;
  spec.methods = {spjeso::parseMethod(methodName)};
  spjeso::SweepOptions opts;
  opts.outDir = outDir;
  opts.workers = workers;
  opts.traces = traces;
  const auto outcome = spjeso::runSweep(sc, spec, opts);
  int failures = 0;
  for (const auto& row : outcome.rows) {
    if (!row.ok()) {
      ++failures;
      continue;
    }
    std::cout << row.method << " rep=" << row.rep << " seed=" << row.seed
              << " total=" << spjeso::formatG9(row.costs.total)
              << " tactical=" << spjeso::formatG9(row.costs.tactical)
              << " deploy=" << spjeso::formatG9(row.costs.deploy) << "\n";
  }
  std::cout << "wrote " << outcome.csvPath.string() << " and "
            << outcome.summaryPath.string() << "\n";
  if (failures > 0) {
    std::cerr << Json{{"error", std::to_string(failures) + " repetition(s) failed"},
                      {"csv", outcome.csvPath.string()}}
                     .dump()
              << "\n";
    return 1;
  }
  return 0;
}

int runSweepCmd(const std::string& path, const std::string& parameter,
                const std::vector<double>& values,
                const std::vector<std::string>& methodNames, int reps,
                std::optional<std::uint64_t> seed, const std::string& outDir,
                int workers, bool traces) {
  const spjeso::Scenario sc = loadWithOverrides(path, seed);
  spjeso::SweepSpec spec;
  spec.parameter = parameter;
  spec.values = values;
  spec.repetitions = reps;
  if (!methodNames.empty()) {
    spec.methods.clear();
    for (const auto& name : methodNames) spec.methods.push_back(spjeso::parseMethod(name));
  }
  spjeso::SweepOptions opts;
  opts.outDir = outDir;
  opts.workers = workers;
  opts.traces = traces;
  const auto outcome = spjeso::runSweep(sc, spec, opts);
  int failures = 0;
  for (const auto& row : outcome.rows)
    if (!row.ok()) ++failures;
  std::cout << "sweep " << parameter << ": " << outcome.rows.size() << " rows ("
            << failures << " failed), csv=" << outcome.csvPath.string()
            << " summary=" << outcome.summaryPath.string() << "\n";
  return 0;  // per-point failures are recorded in their rows
}

int runVerifyTheorems(int t1Instances, int t3Vectors, std::uint64_t seed,
                      const std::string& outPath) {
  std::vector<spjeso::TheoremReport> reports;

  // Tactical optimality on small random instances, exact solver end to end.
  for (int i = 0; i < t1Instances; ++i) {
    spjeso::OracleInstanceOptions opts;
    opts.horizon = 3 + static_cast<int>(i % 2);
    const auto inst =
        spjeso::makeOracleInstance(spjeso::mixSeed(seed, 0x71u, i), opts);
    const auto snaps = spjeso::materializeSnapshots(
        inst.scenario, spjeso::mixSeed(seed, 0x72u, i), opts.horizon);
    const double vs[] = {10.0, 100.0};
    auto rs = spjeso::checkTheorem1(inst.scenario, inst.z, snaps, vs,
                                    inst.scenario.spco, inst.tag);
    reports.insert(reports.end(), rs.begin(), rs.end());
  }

  // Queue stability band on one instance (estimated constants).
  {
    const auto inst = spjeso::makeOracleInstance(spjeso::mixSeed(seed, 0x73u));
    spjeso::SpcoParams params = inst.scenario.spco;
    params.V = 100.0;
    reports.push_back(spjeso::checkTheorem2(inst.scenario, inst.z, 2000, params,
                                            spjeso::mixSeed(seed, 0x74u),
                                            inst.tag));
  }

  // Gibbs gap over random cost vectors.
  spjeso::Rng rng(spjeso::mixSeed(seed, 0x75u));
  const int sizes[] = {2, 8, 32};
  const double betas[] = {0.5, 5.0, 50.0};
  for (int v = 0; v < t3Vectors; ++v) {
    const int k = sizes[v % 3];
    std::vector<double> costs(static_cast<std::size_t>(k));
    for (auto& c : costs) c = rng.uniform(0.0, 100.0);
    for (double beta : betas)
      reports.push_back(spjeso::checkTheorem3(
          costs, beta,
          "U:k=" + std::to_string(k) + ",beta=" + spjeso::formatG9(beta)));
  }

  std::ofstream out;
  if (!outPath.empty()) out.open(outPath);
  int hardFailures = 0;
  for (const auto& r : reports) {
    const std::string line = r.toRecord();
    std::cout << line << "\n";
    if (out) out << line << "\n";
    if (!r.pass && !r.estimatedConstants) ++hardFailures;
  }
  std::cout << reports.size() << " reports, " << hardFailures
            << " hard failures\n";
  return hardFailures == 0 ? 0 : 1;
}

int runDumpSnapshots(const std::string& path, int slots,
                     std::optional<std::uint64_t> seed, const std::string& out) {
  const spjeso::Scenario sc = loadWithOverrides(path, seed);
  if (out.empty() || out == "-") {
    spjeso::dumpSnapshots(sc, sc.dist.seed, slots, std::cout);
  } else {
    std::ofstream os(out, std::ios::binary);
    if (!os) throw std::runtime_error("cannot write " + out);
    spjeso::dumpSnapshots(sc, sc.dist.seed, slots, os);
    std::cout << "wrote " << out << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"two-layer edge deployment / offloading simulator"};
  app.require_subcommand(1);

  std::string scenarioPath;
  std::optional<std::uint64_t> seed;
  std::string outDir = "out";
  int workers = 1;
  bool traces = false;

  auto* validate = app.add_subcommand("validate", "check a scenario file");
  validate->add_option("scenario", scenarioPath, "scenario JSON file")->required();

  auto* run = app.add_subcommand("run", "run one method on one scenario");
  std::string method = "spjeso";
  int reps = 1;
  run->add_option("scenario", scenarioPath)->required();
  run->add_option("--method", method, "spjeso|dae|soed|uoed");
  run->add_option("--reps", reps, "repetitions");
  run->add_option("--seed", seed, "override the scenario seed");
  run->add_option("--out", outDir, "output directory");
  run->add_option("--workers", workers, "parallel workers");
  run->add_flag("--trace", traces, "write per-slot and per-period traces");

  auto* sweep = app.add_subcommand("sweep", "sweep one parameter");
  std::string parameter;
  std::vector<double> values;
  std::vector<std::string> methods;
  sweep->add_option("scenario", scenarioPath)->required();
  sweep->add_option("--param", parameter, "swept parameter name")->required();
  sweep->add_option("--values", values, "swept values")->required()->expected(-1);
  sweep->add_option("--methods", methods, "methods to run")->expected(-1);
  sweep->add_option("--reps", reps, "repetitions per point");
  sweep->add_option("--seed", seed, "override the scenario seed");
  sweep->add_option("--out", outDir, "output directory");
  sweep->add_option("--workers", workers, "parallel workers");
  sweep->add_flag("--trace", traces, "write per-slot and per-period traces");

  auto* verify = app.add_subcommand("verify-theorems",
                                    "numerically verify the performance bounds");
  int t1Instances = 20;
  int t3Vectors = 300;
  std::uint64_t verifySeed = 20260810;
  std::string reportPath;
  verify->add_option("--t1-instances", t1Instances, "tactical bound instances");
  verify->add_option("--t3-vectors", t3Vectors, "random cost vectors");
  verify->add_option("--seed", verifySeed, "seed for instances and vectors");
  verify->add_option("--out", reportPath, "write records to this file");

  auto* dump = app.add_subcommand("dump-snapshots",
                                  "dump generated snapshots for audit");
  int slots = 10;
  std::string dumpOut;
  dump->add_option("scenario", scenarioPath)->required();
  dump->add_option("--slots", slots, "slots to generate");
  dump->add_option("--seed", seed, "override the scenario seed");
  dump->add_option("--out", dumpOut, "output file (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*validate) return runValidate(scenarioPath);
    if (*run) return runSingle(scenarioPath, method, reps, seed, outDir, workers, traces);
    if (*sweep)
      return runSweepCmd(scenarioPath, parameter, values, methods, reps, seed,
                         outDir, workers, traces);
    if (*verify) return runVerifyTheorems(t1Instances, t3Vectors, verifySeed, reportPath);
    if (*dump) return runDumpSnapshots(scenarioPath, slots, seed, dumpOut);
  } catch (const spjeso::ValidationError& e) {
    Json issues = Json::array();
    for (const auto& issue : e.report().issues)
      issues.push_back({{"field", issue.field}, {"message", issue.message}});
    std::cerr << Json{{"error", "scenario validation failed"},
                      {"file", scenarioPath},
                      {"issues", issues}}
                     .dump()
              << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << Json{{"error", e.what()}, {"file", scenarioPath}}.dump() << "\n";
    return 1;
  }
  return 0;
}
