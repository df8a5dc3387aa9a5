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

#pragma once

#include <cstdint>
#include <vector>

#include "spjeso/cost.hpp"
#include "spjeso/scenario.hpp"

namespace spjeso::testing {

struct TestScenarioOptions {
  int esCount = 2;
  int serviceCount = 1;
  int pairCount = 1;
  double storageMeanGb = 200.0;
  double storageStdGb = 0.0;
  double computeMeanGhz = 200.0;
  double computeStdGhz = 0.0;
  double mobilityStepStdM = 0.0;
  std::uint64_t seed = 42;
  double V = 100.0;
  SolverBackend backend = SolverBackend::exhaustive;
  double cloudDelay = -1.0;   // < 0: derive
  double energyBudget = 0.0;  // <= 0: derive per deployment
  double deployBudget = 1.0e6;
  double interactionFrequency = 0.5;
};

/// Deterministic scenario with uniform services/servers; most tests start
/// here and tweak fields.
inline Scenario makeTestScenario(const TestScenarioOptions& o = {}) {
  Scenario sc;
  sc.time.slotsPerPeriod = 4;
  sc.time.periods = 1;
  sc.dist.storageMeanGb = o.storageMeanGb;
  sc.dist.storageStdGb = o.storageStdGb;
  sc.dist.computeMeanGhz = o.computeMeanGhz;
  sc.dist.computeStdGhz = o.computeStdGhz;
  sc.dist.mobilityStepStdM = o.mobilityStepStdM;
  sc.dist.seed = o.seed;
  sc.channel.bandwidthHz = 2.0e6;
  sc.channel.noisePowerW = noisePowerWatts(-174.0, sc.channel.bandwidthHz);
  sc.channel.pathLossExponent = 4.0;
  sc.budget.deployBudget = o.deployBudget;
  sc.budget.energyBudget = o.energyBudget;
  if (o.cloudDelay >= 0) {
    sc.weights.cloudDelay = o.cloudDelay;
    sc.cloudDelayAuto = false;
  }
  sc.spco.V = o.V;
  sc.spco.backend = o.backend;

  ServiceSpec svc;
  svc.storageGb = 40.0;
  svc.coreLoadGhz = 30.0;
  svc.localDataMb = 5.0;
  svc.remoteDataMb = 2.0;
  sc.services = synthesizeServices(o.serviceCount, svc);

  sc.es = synthesizeEsGrid(o.esCount, EsProfile{}, sc.dist.arenaSideM);

  UePair ue;
  ue.interactionFrequency = o.interactionFrequency;
  sc.uePairs = synthesizeUePairs(o.pairCount, ue, o.serviceCount,
                                 sc.dist.arenaSideM, o.seed);

  const ValidationReport report = finalizeScenario(sc);
  if (!report.ok()) throw ValidationError(report);
  return sc;
}

/// Snapshot with uniform capacities and the scenario's initial positions.
inline NetworkSnapshot makeSnapshot(const Scenario& sc, double storageGb,
                                    double computeGhz, int slot = 0) {
  NetworkSnapshot snap;
  snap.slot = slot;
  snap.storageCapGb.assign(static_cast<std::size_t>(sc.esCount()), storageGb);
  snap.computeCapGhz.assign(static_cast<std::size_t>(sc.esCount()), computeGhz);
  snap.wiredRateBps = Grid<double>(sc.esCount(), sc.esCount(), sc.wiredCapacityBps);
  for (const auto& u : sc.uePairs) {
    snap.uePositions.push_back(u.srcPosition);
    snap.uePositions.push_back(u.dstPosition);
  }
  return snap;
}

}  // namespace spjeso::testing
