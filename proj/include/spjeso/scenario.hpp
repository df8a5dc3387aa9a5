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

#include <cmath>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "spjeso/model.hpp"
#include "spjeso/rng.hpp"

namespace spjeso {

/// Distribution parameters of the per-slot stochastic information: server
/// resources are drawn from truncated normals, endpoints follow a Gaussian
/// random walk inside the arena. These parameters are the only forward-
/// looking knowledge available before a slot's values realize.
struct ScenarioDistributions {
  double storageMeanGb = 200.0;
  double storageStdGb = 5.0;
  double computeMeanGhz = 200.0;
  double computeStdGhz = 5.0;
  double arenaSideM = 1000.0;
  double mobilityStepStdM = 20.0;
  std::uint64_t seed = 1;
  bool operator==(const ScenarioDistributions&) const = default;
};

/// Full static configuration of one experiment. Immutable once validated;
/// safe to share read-only across parallel runs.
struct Scenario {
  TimeStructure time;
  ChannelParams channel;
  CostWeights weights;
  BudgetConfig budget;
  ScenarioDistributions dist;
  double wiredCapacityBps = 100.0e6;  // uniform backbone rate between servers
  bool cloudDelayAuto = true;         // derive cloudDelay when not configured
  bool ueLayoutFromSeed = false;      // UE positions are seed-drawn, not authored
  std::vector<ServiceSpec> services;
  std::vector<UePair> uePairs;
  std::vector<EsProfile> es;
  SpcoParams spco;
  MaiedParams maied;

  int esCount() const { return static_cast<int>(es.size()); }
  int serviceCount() const { return static_cast<int>(services.size()); }
  int pairCount() const { return static_cast<int>(uePairs.size()); }
  int endpointCount() const { return 2 * pairCount(); }

  const ServiceSpec& serviceOf(int pair) const {
    return services[static_cast<std::size_t>(uePairs[static_cast<std::size_t>(pair)].serviceId)];
  }

  bool operator==(const Scenario&) const = default;
};

struct ValidationIssue {
  std::string field;
  std::string message;
};

/// Collects every violated invariant instead of stopping at the first.
struct ValidationReport {
  std::vector<ValidationIssue> issues;
  bool ok() const { return issues.empty(); }
  std::string describe() const {
    std::ostringstream os;
    for (const auto& i : issues) os << i.field << ": " << i.message << "\n";
    return os.str();
  }
};

class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(ValidationReport report)
      : std::runtime_error("scenario validation failed:\n" + report.describe()),
        report_(std::move(report)) {}
  const ValidationReport& report() const { return report_; }

 private:
  ValidationReport report_;
};

/// Checks every type invariant of a scenario and reports all violations.
/// cloudDelay must already be resolved (finalizeScenario does both).
inline ValidationReport validateScenario(const Scenario& sc) {
  ValidationReport r;
  auto bad = [&r](std::string field, std::string message) {
    r.issues.push_back({std::move(field), std::move(message)});
  };

  if (sc.time.slotsPerPeriod < 1) bad("time.slotsPerPeriod", "must be >= 1");
  if (sc.time.periods < 1) bad("time.periods", "must be >= 1");

  if (!(sc.channel.bandwidthHz > 0)) bad("channel.bandwidthHz", "must be > 0");
  if (!(sc.channel.noisePowerW > 0)) bad("channel.noisePowerW", "must be > 0");
  if (sc.channel.pathLossExponent < 2.0 || sc.channel.pathLossExponent > 4.0)
    bad("channel.pathLossExponent", "must lie in [2, 4]");

  if (sc.weights.computeDelayCoeff < 0) bad("weights.computeDelayCoeff", "must be >= 0");
  if (sc.weights.txDelayCoeff < 0) bad("weights.txDelayCoeff", "must be >= 0");
  if (sc.weights.eta1 < 0) bad("weights.eta1", "must be >= 0");
  if (sc.weights.eta2 < 0) bad("weights.eta2", "must be >= 0");
  if (sc.weights.eta3 < 0) bad("weights.eta3", "must be >= 0");
  if (sc.weights.cloudDelay < 0) bad("weights.cloudDelay", "must be >= 0");

  if (!(sc.budget.deployBudget > 0)) bad("budget.deployBudget", "must be > 0");
  // energyBudget <= 0 selects the derived per-deployment default.

  if (!(sc.dist.storageMeanGb > 0)) bad("dist.storageMeanGb", "must be > 0");
  if (!(sc.dist.computeMeanGhz > 0)) bad("dist.computeMeanGhz", "must be > 0");
  if (sc.dist.storageStdGb < 0) bad("dist.storageStdGb", "must be >= 0");
  if (sc.dist.computeStdGhz < 0) bad("dist.computeStdGhz", "must be >= 0");
  if (!(sc.dist.arenaSideM > 0)) bad("dist.arenaSideM", "must be > 0");
  if (sc.dist.mobilityStepStdM < 0) bad("dist.mobilityStepStdM", "must be >= 0");

  if (!(sc.wiredCapacityBps > 0)) bad("wiredCapacityBps", "must be > 0");

  if (sc.services.empty()) bad("services", "at least one service required");
  for (std::size_t i = 0; i < sc.services.size(); ++i) {
    const auto& s = sc.services[i];
    const std::string p = "services[" + std::to_string(i) + "].";
    if (s.id != static_cast<int>(i)) bad(p + "id", "must equal its index");
    if (!(s.storageGb > 0)) bad(p + "storageGb", "must be > 0");
    if (s.localLoadGhz != 0.0)
      bad(p + "localLoadGhz", "client-side load is normalized to 0");
    if (!(s.coreLoadGhz > 0)) bad(p + "coreLoadGhz", "must be > 0");
    if (s.localDataMb < 0) bad(p + "localDataMb", "must be >= 0");
    if (s.remoteDataMb < 0) bad(p + "remoteDataMb", "must be >= 0");
  }

  if (sc.es.empty()) bad("es", "at least one base station required");
  for (std::size_t i = 0; i < sc.es.size(); ++i) {
    const auto& e = sc.es[i];
    const std::string p = "es[" + std::to_string(i) + "].";
    if (e.id != static_cast<int>(i)) bad(p + "id", "must equal its index");
    if (!(e.deployCost > 0)) bad(p + "deployCost", "must be > 0");
    if (e.maintainUnitCost < 0) bad(p + "maintainUnitCost", "must be >= 0");
    if (e.placeUnitCost < 0) bad(p + "placeUnitCost", "must be >= 0");
    if (e.idlePowerW < 0) bad(p + "idlePowerW", "must be >= 0");
    if (e.maxPowerW < e.idlePowerW) bad(p + "maxPowerW", "power ordering violated");
  }

  if (sc.uePairs.empty()) bad("uePairs", "at least one UE pair required");
  for (std::size_t i = 0; i < sc.uePairs.size(); ++i) {
    const auto& u = sc.uePairs[i];
    const std::string p = "uePairs[" + std::to_string(i) + "].";
    if (u.id != static_cast<int>(i)) bad(p + "id", "must equal its index");
    if (u.serviceId < 0 || u.serviceId >= sc.serviceCount())
      bad(p + "serviceId", "does not resolve to a service");
    if (u.interactionFrequency < 0 || u.interactionFrequency > 1)
      bad(p + "interactionFrequency", "must lie in [0, 1]");
    if (!(u.txPowerW >= 0)) bad(p + "txPowerW", "must be >= 0");
    for (Side side : {Side::src, Side::dst}) {
      const Vec2& pos = u.position(side);
      if (pos.x < 0 || pos.x > sc.dist.arenaSideM || pos.y < 0 ||
          pos.y > sc.dist.arenaSideM)
        bad(p + (side == Side::src ? "srcPosition" : "dstPosition"),
            "outside the arena");
    }
  }

  if (!(sc.spco.V >= 0)) bad("spco.V", "must be >= 0");
  if (!(sc.spco.exhaustiveCeiling > 0)) bad("spco.exhaustiveCeiling", "must be > 0");
  if (!(sc.maied.mapBeta > 0)) bad("maied.mapBeta", "must be > 0");
  if (!(sc.maied.mapAlpha > 0)) bad("maied.mapAlpha", "must be > 0");
  if (sc.maied.periods < 1) bad("maied.periods", "must be >= 1");
  if (sc.maied.streamsPerEval < 1) bad("maied.streamsPerEval", "must be >= 1");

  return r;
}

/// Average power allowance for a given deployment: the configured budget if
/// set, otherwise 150 W per deployed server (at least one server's worth so
/// the allowance stays positive).
inline double resolveEnergyBudget(const Scenario& sc, const DeploymentDecision& z) {
  if (sc.budget.energyBudget > 0) return sc.budget.energyBudget;
  const int k = z.deployedCount();
  return 150.0 * static_cast<double>(k > 0 ? k : 1);
}

// -- Synthesis helpers -------------------------------------------------------
//
// Scenario files may describe servers, services, and UE pairs either as
// explicit lists or compactly as a count plus a template; these helpers
// expand the compact form deterministically.

/// Base stations spread evenly over the arena: floor(sqrt(count)) rows, the
/// stations balanced across rows and each row centered, so non-square counts
/// still cover the whole area.
inline std::vector<EsProfile> synthesizeEsGrid(int count, const EsProfile& templ,
                                               double arenaSideM) {
  std::vector<EsProfile> out;
  out.reserve(static_cast<std::size_t>(count));
  const int rows = std::max(
      1, static_cast<int>(std::floor(std::sqrt(static_cast<double>(count)))));
  const int base = count / rows;
  const int extra = count % rows;  // the first `extra` rows take one more
  int id = 0;
  for (int r = 0; r < rows; ++r) {
    const int inRow = base + (r < extra ? 1 : 0);
    for (int j = 0; j < inRow; ++j) {
      EsProfile e = templ;
      e.id = id++;
      e.position = {(j + 0.5) * arenaSideM / inRow,
                    (r + 0.5) * arenaSideM / rows};
      out.push_back(e);
    }
  }
  return out;
}

inline std::vector<ServiceSpec> synthesizeServices(int count,
                                                   const ServiceSpec& templ) {
  std::vector<ServiceSpec> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    ServiceSpec s = templ;
    s.id = i;
    out.push_back(s);
  }
  return out;
}

/// UE pairs with seeded uniform initial positions; services are assigned
/// round-robin.
inline std::vector<UePair> synthesizeUePairs(int count, const UePair& templ,
                                             int serviceCount, double arenaSideM,
                                             std::uint64_t seed) {
  Rng rng(mixSeed(seed, /*salt=*/0x0e5au));
  std::vector<UePair> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    UePair u = templ;
    u.id = i;
    u.serviceId = i % serviceCount;
    u.srcPosition = {rng.uniform(0.0, arenaSideM), rng.uniform(0.0, arenaSideM)};
    u.dstPosition = {rng.uniform(0.0, arenaSideM), rng.uniform(0.0, arenaSideM)};
    out.push_back(u);
  }
  return out;
}

}  // namespace spjeso
