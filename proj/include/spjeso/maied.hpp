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
// Strategic layer: the deployment decision is sampled by a reversible Markov
// chain over the budget-feasible deployment set. Proposals are uniform over
// the other configurations; acceptance follows a heat-bath rule in the cost
// difference, so (at unit transition-rate constant) the chain's stationary
// law is the Gibbs distribution over total system cost.

#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "spjeso/cost.hpp"
#include "spjeso/generator.hpp"
#include "spjeso/rng.hpp"
#include "spjeso/scenario.hpp"
#include "spjeso/spco.hpp"

namespace spjeso {

/// Enumeration of every deployment vector within the deployment budget.
/// The empty deployment is always a member, so the space is never empty.
class ConfigSpace {
 public:
  static ConfigSpace enumerate(const Scenario& sc) {
    const int M = sc.esCount();
    if (M > 20)
      throw SearchSpaceError(
          "deployment space enumeration supports at most 20 base stations");
    ConfigSpace space;
    for (std::uint32_t bits = 0; bits < (1u << M); ++bits) {
      DeploymentDecision z = DeploymentDecision::zeros(M);
      for (int m = 0; m < M; ++m) z.z[static_cast<std::size_t>(m)] = (bits >> m) & 1u;
      if (deploymentCost(sc, z) <= sc.budget.deployBudget)
        space.configs_.push_back(std::move(z));
    }
    return space;
  }

  int size() const { return static_cast<int>(configs_.size()); }
  const DeploymentDecision& at(int i) const {
    return configs_[static_cast<std::size_t>(i)];
  }
  const std::vector<DeploymentDecision>& all() const { return configs_; }

  int indexOf(const DeploymentDecision& z) const {
    for (int i = 0; i < size(); ++i)
      if (configs_[static_cast<std::size_t>(i)] == z) return i;
    return -1;
  }

 private:
  std::vector<DeploymentDecision> configs_;
};

/// Gibbs weights exp(-beta * cost), normalized with a max-shift so that
/// arbitrarily large costs cannot overflow. The result sums to one up to
/// rounding.
inline std::vector<double> gibbsDistribution(std::span<const double> costs,
                                             double beta) {
  if (costs.empty())
    throw std::invalid_argument("gibbsDistribution over an empty set");
  double lo = costs[0];
  for (double u : costs) lo = std::min(lo, u);
  std::vector<double> p(costs.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < costs.size(); ++i) {
    p[i] = std::exp(-beta * (costs[i] - lo));
    sum += p[i];
  }
  for (double& v : p) v /= sum;
  return p;
}

/// Probability of accepting a move from a configuration with cost `uCur` to
/// one with cost `uTarget`. Saturates cleanly at the floating-point ends for
/// extreme cost differences.
inline double transitionProbability(double uCur, double uTarget, double mapAlpha,
                                    double beta) {
  const double e = beta * (uTarget - uCur);
  if (e > 700.0) return 0.0;
  return 1.0 / (1.0 + mapAlpha * std::exp(e));
}

/// Which slot-cost component the deployment search feeds back on. The full
/// objective drives the main method; the two restricted objectives realize
/// the service-oriented and UE-oriented baselines on identical mechanics.
enum class DeployObjective { total, operationOnly, ueDelayOnly };

/// Total system cost of one deployment: weighted deployment cost plus the
/// average tactical-layer estimate over the provided information streams.
inline double systemCost(const Scenario& sc, const DeploymentDecision& z,
                         std::vector<InfoStream>& streams,
                         const SpcoParams& params,
                         DeployObjective objective = DeployObjective::total) {
  if (streams.empty()) throw std::invalid_argument("systemCost needs a stream");
  double tactical = 0.0;
  for (auto& stream : streams) {
    const int T = stream.horizon() > 0 ? stream.horizon() : sc.time.slotsPerPeriod;
    const SpcoResult run = runSpco(sc, z, stream, T, params);
    switch (objective) {
      case DeployObjective::total:
        tactical += run.averageTacticalCost;
        break;
      case DeployObjective::operationOnly:
        tactical += sc.weights.eta2 * run.averageOperationCost;
        break;
      case DeployObjective::ueDelayOnly:
        tactical += sc.weights.eta3 * run.averageUeDelayCost;
        break;
    }
  }
  return sc.weights.eta1 * deploymentCost(sc, z) +
         tactical / static_cast<double>(streams.size());
}

struct MaiedTraceRow {
  int period = 0;
  int configIndex = 0;
  DeploymentDecision z;
  double cost = 0.0;
  bool accepted = false;  // whether this period's proposal was taken
};

struct MaiedResult {
  std::vector<MaiedTraceRow> trace;  // one row per period, starting state first
  double averageCost = 0.0;
  DeploymentDecision best;
  double bestCost = 0.0;
  std::vector<int> visitCounts;  // per configuration index
};

/// Chain mechanics over an externally supplied cost evaluator; period 0
/// holds the starting configuration, every later period proposes uniformly
/// from the remaining configurations and accepts by the heat-bath rule.
/// The evaluator is called once per evaluation (cost of the proposal), so
/// stochastic evaluations make the recorded costs fresh samples.
inline MaiedResult runMaiedChain(
    const ConfigSpace& space, const MaiedParams& params, std::uint64_t seed,
    const std::function<double(int config, int period)>& evalCost,
    std::ostream* trace = nullptr, int startIndex = 0) {
  if (space.size() < 1) throw std::invalid_argument("empty configuration space");
  Rng rng(mixSeed(seed, 0xc4a1u));
  MaiedResult res;
  res.visitCounts.assign(static_cast<std::size_t>(space.size()), 0);
  if (trace) *trace << "period\tz\tcost\taccepted\n";

  int cur = startIndex;
  double curCost = evalCost(cur, 0);
  res.best = space.at(cur);
  res.bestCost = curCost;

  const auto record = [&](int period, bool accepted) {
    res.trace.push_back({period, cur, space.at(cur), curCost, accepted});
    res.visitCounts[static_cast<std::size_t>(cur)] += 1;
    res.averageCost += curCost;
    if (curCost < res.bestCost) {
      res.bestCost = curCost;
      res.best = space.at(cur);
    }
    if (trace)
      *trace << period << "\t" << space.at(cur).bitstring() << "\t"
             << formatG9(curCost) << "\t" << (accepted ? 1 : 0) << "\n";
  };

  record(0, false);
  for (int period = 1; period < params.periods; ++period) {
    bool accepted = false;
    if (space.size() > 1) {
      int proposal = rng.uniformInt(space.size() - 1);
      if (proposal >= cur) ++proposal;  // uniform over the other configs
      const double propCost = evalCost(proposal, period);
      const double p =
          transitionProbability(curCost, propCost, params.mapAlpha, params.mapBeta);
      if (rng.uniform01() < p) {
        cur = proposal;
        curCost = propCost;
        accepted = true;
      }
    }
    record(period, accepted);
  }
  res.averageCost /= static_cast<double>(res.trace.size());
  return res;
}

/// The frozen information batch used when freezeInfo is set: derived from
/// the scenario seed only, so every evaluation of a configuration within a
/// run (and across runs on the same scenario) sees the same realizations.
inline std::vector<InfoStream> frozenEvalBatch(const Scenario& sc,
                                               const MaiedParams& params,
                                               int horizon) {
  return sampleScenarioBatch(sc, mixSeed(sc.dist.seed, 0xf0f0u),
                             params.streamsPerEval, horizon);
}

/// Full strategic search: starts from the empty deployment and walks the
/// feasible deployment space for the configured number of periods. Fresh
/// information realizes every period unless freezeInfo is set, in which case
/// one frozen batch is drawn up front and evaluations are memoized (the cost
/// of a configuration is then deterministic, so re-evaluation is pointless).
inline MaiedResult runMaied(const Scenario& sc, const MaiedParams& params,
                            const SpcoParams& spcoParams, std::uint64_t seed,
                            DeployObjective objective = DeployObjective::total,
                            std::ostream* trace = nullptr) {
  const ConfigSpace space = ConfigSpace::enumerate(sc);
  const int T = sc.time.slotsPerPeriod;

  std::map<int, double> frozenCache;
  const auto evalCost = [&](int config, int period) {
    if (params.freezeInfo) {
      if (auto it = frozenCache.find(config); it != frozenCache.end())
        return it->second;
      auto streams = frozenEvalBatch(sc, params, T);
      const double u = systemCost(sc, space.at(config), streams, spcoParams,
                                  objective);
      frozenCache.emplace(config, u);
      return u;
    }
    auto streams =
        sampleScenarioBatch(sc, mixSeed(seed, 0x1f0u, static_cast<std::uint64_t>(period)),
                            params.streamsPerEval, T);
    return systemCost(sc, space.at(config), streams, spcoParams, objective);
  };

  const int start = space.indexOf(DeploymentDecision::zeros(sc.esCount()));
  return runMaiedChain(space, params, seed, evalCost, trace,
                       start >= 0 ? start : 0);
}

// -- Deployment baselines -----------------------------------------------------

/// Deploy everything, budget or not (the budget check will flag overruns).
inline DeploymentDecision baselineDAE(const Scenario& sc) {
  return DeploymentDecision::ones(sc.esCount());
}

/// Deployment search driven only by the service-operation component.
inline DeploymentDecision baselineSOED(const Scenario& sc, const MaiedParams& params,
                                       const SpcoParams& spcoParams,
                                       std::uint64_t seed) {
  return runMaied(sc, params, spcoParams, seed, DeployObjective::operationOnly)
      .best;
}

/// Deployment search driven only by the UE-delay component.
inline DeploymentDecision baselineUOED(const Scenario& sc, const MaiedParams& params,
                                       const SpcoParams& spcoParams,
                                       std::uint64_t seed) {
  return runMaied(sc, params, spcoParams, seed, DeployObjective::ueDelayOnly).best;
}

}  // namespace spjeso
