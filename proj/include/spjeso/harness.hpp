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
// Experiment harness: runs one method on one scenario, or a parameter sweep
// over (method, value, repetition) grids, and writes CSV rows plus a JSON
// summary with per-method means and pairwise cost reductions. All choices of
// randomness derive from the repetition seed and never from the method, so
// methods compete on common random numbers and reruns are byte-identical.

#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "json.hpp"
#include "spjeso/cost.hpp"
#include "spjeso/generator.hpp"
#include "spjeso/maied.hpp"
#include "spjeso/scenario.hpp"
#include "spjeso/spco.hpp"

namespace spjeso {

enum class Method { spjeso, dae, soed, uoed };

inline const std::vector<Method>& allMethods() {
  static const std::vector<Method> methods = {Method::spjeso, Method::dae,
                                              Method::soed, Method::uoed};
  return methods;
}

inline std::string toString(Method m) {
  switch (m) {
    case Method::spjeso: return "spjeso";
    case Method::dae: return "dae";
    case Method::soed: return "soed";
    case Method::uoed: return "uoed";
  }
  return "?";
}

inline Method parseMethod(const std::string& s) {
  if (s == "spjeso") return Method::spjeso;
  if (s == "dae") return Method::dae;
  if (s == "soed") return Method::soed;
  if (s == "uoed") return Method::uoed;
  throw std::invalid_argument("unknown method: " + s);
}

/// One sweep: which knob to move, over which values, how many repetitions
/// per point, and which methods compete.
struct SweepSpec {
  std::string parameter = "none";
  std::vector<double> values = {0.0};
  int repetitions = 1;
  std::vector<Method> methods = allMethods();
};

/// One experiment outcome. Runtime is kept out of the CSV (it is not
/// reproducible byte-for-byte); the summary reports mean runtimes instead.
struct ResultRow {
  std::string method;
  std::string param = "none";
  double value = 0.0;
  int rep = 0;
  std::uint64_t seed = 0;
  std::string status = "ok";
  CostBreakdown costs;
  double runtimeSec = 0.0;

  bool ok() const { return status == "ok"; }
};

inline const std::vector<std::string>& sweepableParameters() {
  static const std::vector<std::string> names = {
      "esCount",       "cpuMean",  "unitDeployCost",
      "serviceCount",  "serviceSize", "ueCount",
      "interactionFrequency", "dataVolume", "V", "mapBeta"};
  return names;
}

/// Applies one swept value to a scenario. Structural parameters re-expand
/// from the first entry as template; scalar parameters overwrite uniformly.
/// The caller re-finalizes afterwards.
inline void applySweepOverride(Scenario& sc, const std::string& parameter,
                               double value) {
  if (parameter == "none") return;
  if (parameter == "esCount") {
    sc.es = synthesizeEsGrid(static_cast<int>(value), sc.es.at(0),
                             sc.dist.arenaSideM);
  } else if (parameter == "cpuMean") {
    sc.dist.computeMeanGhz = value;
  } else if (parameter == "unitDeployCost") {
    for (auto& e : sc.es) e.deployCost = value;
  } else if (parameter == "serviceCount") {
    sc.services = synthesizeServices(static_cast<int>(value), sc.services.at(0));
    for (auto& u : sc.uePairs) u.serviceId = u.id % sc.serviceCount();
  } else if (parameter == "serviceSize") {
    for (auto& s : sc.services) s.storageGb = value;
  } else if (parameter == "ueCount") {
    sc.uePairs = synthesizeUePairs(static_cast<int>(value), sc.uePairs.at(0),
                                   sc.serviceCount(), sc.dist.arenaSideM,
                                   sc.dist.seed);
  } else if (parameter == "interactionFrequency") {
    for (auto& u : sc.uePairs) u.interactionFrequency = value;
  } else if (parameter == "dataVolume") {
    for (auto& s : sc.services) {
      s.localDataMb = value;
      s.remoteDataMb = value;
    }
  } else if (parameter == "V") {
    sc.spco.V = value;
  } else if (parameter == "mapBeta") {
    sc.maied.mapBeta = value;
  } else {
    throw std::invalid_argument("unknown sweep parameter: " + parameter);
  }
}

struct ExperimentOptions {
  std::filesystem::path traceDir;  // empty: no traces
};

namespace harness_detail {

inline constexpr std::uint64_t kRepTag = 0x0e97;
inline constexpr std::uint64_t kSearchTag = 0x5ea5c;
inline constexpr std::uint64_t kEvalTag = 0x0e7a1;
inline constexpr std::uint64_t kLayoutTag = 0x1a40;

inline std::string rowStem(const ResultRow& row) {
  std::ostringstream os;
  os << row.method << "_" << row.param << "_" << formatG9(row.value) << "_rep"
     << row.rep;
  return os.str();
}

}  // namespace harness_detail

/// Runs one (method, swept value, repetition). The repetition seed replaces
/// the scenario seed; search and evaluation streams derive from it with
/// distinct salts, and seed-drawn UE layouts are redrawn from it (the layout
/// depends only on the repetition, never on the swept value or the method,
/// so sweep points stay paired). The deployment found by the method is then
/// scored by one common-seed evaluation run, so every method is judged on
/// the same realization.
inline ResultRow runExperiment(const Scenario& base, Method method,
                               const std::string& parameter, double value,
                               int rep, const ExperimentOptions& opts = {}) {
  ResultRow row;
  row.method = toString(method);
  row.param = parameter;
  row.value = value;
  row.rep = rep;
  row.seed = mixSeed(base.dist.seed, harness_detail::kRepTag,
                     static_cast<std::uint64_t>(rep));

  const auto t0 = std::chrono::steady_clock::now();
  try {
    Scenario sc = base;
    applySweepOverride(sc, parameter, value);
    sc.dist.seed = row.seed;
    if (sc.ueLayoutFromSeed) {
      Rng layout(mixSeed(row.seed, harness_detail::kLayoutTag));
      for (auto& u : sc.uePairs) {
        u.srcPosition = {layout.uniform(0.0, sc.dist.arenaSideM),
                         layout.uniform(0.0, sc.dist.arenaSideM)};
        u.dstPosition = {layout.uniform(0.0, sc.dist.arenaSideM),
                         layout.uniform(0.0, sc.dist.arenaSideM)};
      }
    }
    const ValidationReport report = finalizeScenario(sc);
    if (!report.ok()) throw ValidationError(report);

    const std::uint64_t searchSeed = mixSeed(row.seed, harness_detail::kSearchTag);
    const std::uint64_t evalSeed = mixSeed(row.seed, harness_detail::kEvalTag);

    std::ofstream maiedTrace;
    std::ostream* maiedTracePtr = nullptr;
    if (!opts.traceDir.empty() && method != Method::dae) {
      maiedTrace.open(opts.traceDir /
                      (harness_detail::rowStem(row) + "_maied.tsv"));
      maiedTracePtr = &maiedTrace;
    }

    DeploymentDecision z;
    switch (method) {
      case Method::dae:
        z = baselineDAE(sc);
        break;
      case Method::spjeso:
        z = runMaied(sc, sc.maied, sc.spco, searchSeed, DeployObjective::total,
                     maiedTracePtr)
                .best;
        break;
      case Method::soed:
        z = runMaied(sc, sc.maied, sc.spco, searchSeed,
                     DeployObjective::operationOnly, maiedTracePtr)
                .best;
        break;
      case Method::uoed:
        z = runMaied(sc, sc.maied, sc.spco, searchSeed,
                     DeployObjective::ueDelayOnly, maiedTracePtr)
                .best;
        break;
    }

    std::ofstream spcoTrace;
    std::ostream* spcoTracePtr = nullptr;
    if (!opts.traceDir.empty()) {
      spcoTrace.open(opts.traceDir / (harness_detail::rowStem(row) + "_spco.tsv"));
      spcoTracePtr = &spcoTrace;
    }

    InfoStream evalStream(sc, evalSeed);
    const SpcoResult run = runSpco(sc, z, evalStream, sc.time.slotsPerPeriod,
                                   sc.spco, spcoTracePtr);

    row.costs.deploy = deploymentCost(sc, z);
    row.costs.maintain = run.averageMaintainCost;
    row.costs.place = run.averagePlaceCost;
    row.costs.operation = run.averageOperationCost;
    row.costs.ueDelay = run.averageUeDelayCost;
    row.costs.energyW = run.averageEnergyW;
    row.costs.tactical = run.averageTacticalCost;
    row.costs.total = sc.weights.eta1 * row.costs.deploy + row.costs.tactical;
  } catch (const std::exception& e) {
    std::string what = e.what();
    for (char& c : what)  // keep the status single-line for the CSV
      if (c == '\n' || c == '\r') c = ' ';
    row.status = "error: " + what;
    const double nan = std::nan("");
    row.costs = CostBreakdown{nan, nan, nan, nan, nan, nan, nan, nan};
  }
  row.runtimeSec =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return row;
}

// -- CSV and summary -----------------------------------------------------------

inline const char* kResultsCsvHeader =
    "method,param,value,rep,seed,status,deploy_cost,maintain_cost,place_cost,"
    "operation_cost,ue_delay_cost,energy_avg_w,tactical_cost,total_cost";

inline std::string csvQuote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    out += c;
  }
  out += "\"";
  return out;
}

inline void writeResultsCsv(const std::vector<ResultRow>& rows, std::ostream& os) {
  os << kResultsCsvHeader << "\n";
  for (const auto& r : rows) {
    os << r.method << "," << r.param << "," << formatG9(r.value) << "," << r.rep
       << "," << r.seed << "," << csvQuote(r.status) << ","
       << formatG9(r.costs.deploy) << "," << formatG9(r.costs.maintain) << ","
       << formatG9(r.costs.place) << "," << formatG9(r.costs.operation) << ","
       << formatG9(r.costs.ueDelay) << "," << formatG9(r.costs.energyW) << ","
       << formatG9(r.costs.tactical) << "," << formatG9(r.costs.total) << "\n";
  }
}

/// Reads rows written by writeResultsCsv (the one place quoting matters is
/// the status column).
inline std::vector<ResultRow> readResultsCsv(std::istream& is) {
  std::vector<ResultRow> rows;
  std::string line;
  if (!std::getline(is, line)) return rows;
  if (line != kResultsCsvHeader)
    throw std::runtime_error("unexpected results CSV header: " + line);
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
      const char c = line[i];
      if (quoted) {
        if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else if (c == '"') {
          quoted = false;
        } else {
          cur += c;
        }
      } else if (c == '"') {
        quoted = true;
      } else if (c == ',') {
        fields.push_back(cur);
        cur.clear();
      } else {
        cur += c;
      }
    }
    fields.push_back(cur);
    if (fields.size() != 14)
      throw std::runtime_error("malformed results CSV row: " + line);
    ResultRow r;
    r.method = fields[0];
    r.param = fields[1];
    r.value = std::stod(fields[2]);
    r.rep = std::stoi(fields[3]);
    r.seed = std::stoull(fields[4]);
    r.status = fields[5];
    r.costs.deploy = std::stod(fields[6]);
    r.costs.maintain = std::stod(fields[7]);
    r.costs.place = std::stod(fields[8]);
    r.costs.operation = std::stod(fields[9]);
    r.costs.ueDelay = std::stod(fields[10]);
    r.costs.energyW = std::stod(fields[11]);
    r.costs.tactical = std::stod(fields[12]);
    r.costs.total = std::stod(fields[13]);
    rows.push_back(std::move(r));
  }
  return rows;
}

/// Per-method means and the "reduce cost by up to X%" pairwise summaries:
/// for each baseline, the maximum over swept values of
/// (baseline mean - spjeso mean) / baseline mean.
inline nlohmann::json summarizeResults(const SweepSpec& spec,
                                       const std::vector<ResultRow>& rows) {
  nlohmann::json summary;
  summary["parameter"] = spec.parameter;
  summary["values"] = spec.values;
  summary["repetitions"] = spec.repetitions;

  const auto meanTotal = [&](Method m, double value) {
    double sum = 0.0;
    int count = 0;
    for (const auto& r : rows) {
      if (!r.ok() || r.method != toString(m) || r.value != value) continue;
      sum += r.costs.total;
      ++count;
    }
    return count > 0 ? sum / count : std::nan("");
  };

  nlohmann::json methods;
  for (Method m : spec.methods) {
    double total = 0.0, runtime = 0.0;
    int count = 0;
    for (const auto& r : rows) {
      if (r.method != toString(m)) continue;
      runtime += r.runtimeSec;
      if (!r.ok()) continue;
      total += r.costs.total;
      ++count;
    }
    nlohmann::json entry;
    entry["meanTotalCost"] = count > 0 ? total / count : std::nan("");
    entry["meanRuntimeSec"] =
        runtime / std::max<std::size_t>(1, rows.size() / spec.methods.size());
    nlohmann::json byValue = nlohmann::json::array();
    for (double v : spec.values) byValue.push_back(meanTotal(m, v));
    entry["meanTotalCostByValue"] = byValue;
    methods[toString(m)] = entry;
  }
  summary["methods"] = methods;

  const bool hasSpjeso =
      std::find(spec.methods.begin(), spec.methods.end(), Method::spjeso) !=
      spec.methods.end();
  if (hasSpjeso) {
    nlohmann::json reductions;
    for (Method m : spec.methods) {
      if (m == Method::spjeso) continue;
      double best = std::nan("");
      for (double v : spec.values) {
        const double ours = meanTotal(Method::spjeso, v);
        const double theirs = meanTotal(m, v);
        if (std::isnan(ours) || std::isnan(theirs) || theirs == 0.0) continue;
        const double pct = (theirs - ours) / theirs * 100.0;
        if (std::isnan(best) || pct > best) best = pct;
      }
      reductions[toString(m)] = best;
    }
    summary["costReductionVsSpjesoPct"] = reductions;
  }
  return summary;
}

struct SweepOptions {
  int workers = 1;
  std::filesystem::path outDir = ".";
  std::string csvName = "results.csv";
  std::string summaryName = "summary.json";
  bool traces = false;
};

struct SweepOutcome {
  std::vector<ResultRow> rows;
  std::filesystem::path csvPath;
  std::filesystem::path summaryPath;
};

/// Runs the full (method x value x repetition) grid. Workers pull tasks from
/// a shared counter; each task writes only its own preallocated row, so the
/// output order (method-major, then value, then repetition) is independent
/// of scheduling. Failed points keep their row and the sweep continues.
inline SweepOutcome runSweep(const Scenario& base, const SweepSpec& spec,
                             const SweepOptions& opts = {}) {
  if (spec.values.empty()) throw std::invalid_argument("sweep needs values");
  if (spec.repetitions < 1) throw std::invalid_argument("repetitions must be >= 1");
  if (spec.methods.empty()) throw std::invalid_argument("sweep needs methods");

  std::filesystem::create_directories(opts.outDir);
  ExperimentOptions expOpts;
  if (opts.traces) {
    expOpts.traceDir = opts.outDir / "traces";
    std::filesystem::create_directories(expOpts.traceDir);
  }

  struct Task {
    Method method;
    double value;
    int rep;
  };
  std::vector<Task> tasks;
  for (Method m : spec.methods)
    for (double v : spec.values)
      for (int rep = 0; rep < spec.repetitions; ++rep) tasks.push_back({m, v, rep});

  SweepOutcome outcome;
  outcome.rows.resize(tasks.size());
  std::atomic<std::size_t> cursor{0};
  const int workers = std::max(1, opts.workers);
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&]() {
      while (true) {
        const std::size_t i = cursor.fetch_add(1);
        if (i >= tasks.size()) return;
        const Task& task = tasks[i];
        outcome.rows[i] = runExperiment(base, task.method, spec.parameter,
                                        task.value, task.rep, expOpts);
      }
    });
  }
  for (auto& t : pool) t.join();

  outcome.csvPath = opts.outDir / opts.csvName;
  {
    std::ofstream csv(outcome.csvPath, std::ios::binary);
    writeResultsCsv(outcome.rows, csv);
  }
  outcome.summaryPath = opts.outDir / opts.summaryName;
  {
    std::ofstream js(outcome.summaryPath);
    js << summarizeResults(spec, outcome.rows).dump(2) << "\n";
  }
  return outcome;
}

}  // namespace spjeso
