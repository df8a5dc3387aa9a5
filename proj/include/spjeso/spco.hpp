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
// Tactical layer: an energy-deficit virtual queue turns the long-term power
// budget into per-slot pressure, and each slot solves a single-slot
// drift-plus-penalty problem over placement and offloading. Two backends
// solve that problem: an exact enumerator for desk-size instances and a
// greedy two-phase heuristic with a local-search pass for everything else.

#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <ostream>
#include <utility>
#include <vector>

#include "spjeso/cost.hpp"
#include "spjeso/generator.hpp"
#include "spjeso/model.hpp"
#include "spjeso/scenario.hpp"

namespace spjeso {

/// Energy-deficit virtual queue. Its backlog accumulates how far realized
/// power draw has run over the long-term allowance; a stable queue is
/// equivalent to meeting the allowance on average.
struct QueueState {
  double backlog = 0.0;
  std::vector<std::pair<double, double>> history;  // (backlog at t, energy at t)

  double averageBacklog() const {
    if (history.empty()) return 0.0;
    double s = 0.0;
    for (const auto& [b, z] : history) s += b;
    return s / static_cast<double>(history.size());
  }
  double averageEnergy() const {
    if (history.empty()) return 0.0;
    double s = 0.0;
    for (const auto& [b, z] : history) s += z;
    return s / static_cast<double>(history.size());
  }
};

/// backlog(t+1) = max(backlog(t) + energy - budget, 0).
inline QueueState updateQueue(QueueState q, double energyW, double energyBudgetW) {
  q.history.emplace_back(q.backlog, energyW);
  q.backlog = std::max(q.backlog + energyW - energyBudgetW, 0.0);
  return q;
}

/// Constant bounding half the squared per-slot queue increment: power draw
/// lies in [0, sum of deployed max powers], so |energy - budget| is at most
/// max(budget, maxDraw - budget).
inline double computeDriftBound(const Scenario& sc, const DeploymentDecision& z,
                                double energyBudgetW) {
  double maxDraw = 0.0;
  for (int m = 0; m < z.size(); ++m)
    if (z.deployed(m)) maxDraw += sc.es[static_cast<std::size_t>(m)].maxPowerW;
  const double dev = std::max(energyBudgetW, maxDraw - energyBudgetW);
  return 0.5 * dev * dev;
}

/// Single-slot surrogate objective: backlog * (energy - budget) + V * slot
/// tactical cost.
inline double p3Objective(const Scenario& sc, const NetworkSnapshot& snap,
                          const TacticalDecision& dec,
                          const Grid<std::uint8_t>& xPrev,
                          const DeploymentDecision& z, double backlog,
                          const SpcoParams& params, double energyBudgetW) {
  return backlog * (energy(sc, snap, dec.x, z) - energyBudgetW) +
         params.V * tacticalCost(sc, snap, dec, xPrev);
}

struct P3Solution {
  TacticalDecision decision;
  double objective = 0.0;
  double tactical = 0.0;  // slot cost of the chosen decision
};

namespace detail {

/// Flattened 0/1 encoding (x row-major, then ySrc, then yDst) used for
/// deterministic lexicographic tie-breaking between equal-objective optima.
inline std::vector<std::uint8_t> encodeDecision(const TacticalDecision& dec) {
  std::vector<std::uint8_t> enc;
  enc.reserve(dec.x.data().size() + dec.ySrc.data().size() +
              dec.yDst.data().size());
  enc.insert(enc.end(), dec.x.data().begin(), dec.x.data().end());
  enc.insert(enc.end(), dec.ySrc.data().begin(), dec.ySrc.data().end());
  enc.insert(enc.end(), dec.yDst.data().begin(), dec.yDst.data().end());
  return enc;
}

/// Delay cost of serving one endpoint from one server (access + compute),
/// or infinity when the server cannot be used (unreachable, co-located).
inline double endpointDelayOrInf(const Scenario& sc, const NetworkSnapshot& snap,
                                 int pair, Side side, int es) {
  try {
    return accessDelayCost(sc, snap, pair, side, es) +
           computeDelayCost(sc, snap, pair, es);
  } catch (const std::domain_error&) {
    return std::numeric_limits<double>::infinity();
  }
}

/// delay[endpoint][es]; endpoint index e = 2*pair + (side == dst).
inline Grid<double> endpointDelayMatrix(const Scenario& sc,
                                        const NetworkSnapshot& snap) {
  Grid<double> d(sc.endpointCount(), sc.esCount());
  for (int n = 0; n < sc.pairCount(); ++n)
    for (Side side : {Side::src, Side::dst})
      for (int m = 0; m < sc.esCount(); ++m)
        d(2 * n + (side == Side::dst ? 1 : 0), m) =
            endpointDelayOrInf(sc, snap, n, side, m);
  return d;
}

/// Per-server placement subsets that fit both storage and compute capacity.
/// Compute capacity caps the placement load so the linear power ramp stays
/// within its domain. Undeployed servers admit only the empty subset.
inline std::vector<std::vector<std::uint32_t>> feasiblePlacementMasks(
    const Scenario& sc, const NetworkSnapshot& snap, const DeploymentDecision& z) {
  const int S = sc.serviceCount();
  std::vector<std::vector<std::uint32_t>> masks(
      static_cast<std::size_t>(sc.esCount()));
  for (int m = 0; m < sc.esCount(); ++m) {
    auto& list = masks[static_cast<std::size_t>(m)];
    if (!z.deployed(m)) {
      list.push_back(0);
      continue;
    }
    for (std::uint32_t mask = 0; mask < (1u << S); ++mask) {
      double storage = 0.0, load = 0.0;
      for (int s = 0; s < S; ++s)
        if (mask & (1u << s)) {
          storage += sc.services[static_cast<std::size_t>(s)].storageGb;
          load += sc.services[static_cast<std::size_t>(s)].coreLoadGhz;
        }
      if (storage <= snap.storageCapGb[static_cast<std::size_t>(m)] &&
          load <= snap.computeCapGhz[static_cast<std::size_t>(m)])
        list.push_back(mask);
    }
  }
  return masks;
}

struct ExhaustiveState {
  const Scenario* sc;
  const NetworkSnapshot* snap;
  const Grid<std::uint8_t>* xPrev;
  const DeploymentDecision* z;
  double backlog;
  const SpcoParams* params;
  double energyBudgetW;
  const Grid<double>* delays;
  TacticalDecision work;
  std::vector<double> load;  // per-server offloaded compute load
  std::optional<P3Solution> best;
  std::vector<std::uint8_t> bestEncoding;

  void consider() {
    const double obj = p3Objective(*sc, *snap, work, *xPrev, *z, backlog,
                                   *params, energyBudgetW);
    if (best && obj > best->objective) return;
    if (best && obj == best->objective) {
      auto enc = encodeDecision(work);
      if (!(enc < bestEncoding)) return;
      bestEncoding = std::move(enc);
      best->decision = work;
      best->tactical = tacticalCost(*sc, *snap, work, *xPrev);
      return;
    }
    P3Solution sol;
    sol.decision = work;
    sol.objective = obj;
    sol.tactical = tacticalCost(*sc, *snap, work, *xPrev);
    best = std::move(sol);
    bestEncoding = encodeDecision(work);
  }

  void assignEndpoints(int e) {
    const int twoN = 2 * sc->pairCount();
    if (e == twoN) {
      consider();
      return;
    }
    const int pair = e / 2;
    const Side side = (e % 2 == 0) ? Side::src : Side::dst;
    auto& y = work.y(side);
    // Cloud first, then servers in index order.
    assignEndpoints(e + 1);
    const int sid = sc->uePairs[static_cast<std::size_t>(pair)].serviceId;
    const double demand =
        sc->uePairs[static_cast<std::size_t>(pair)].interactionFrequency *
        sc->serviceOf(pair).coreLoadGhz;
    for (int m = 0; m < sc->esCount(); ++m) {
      if (!work.x(m, sid)) continue;
      if (!std::isfinite((*delays)(e, m))) continue;
      if (load[static_cast<std::size_t>(m)] + demand >
          snap->computeCapGhz[static_cast<std::size_t>(m)])
        continue;
      y(m, pair) = 1;
      load[static_cast<std::size_t>(m)] += demand;
      assignEndpoints(e + 1);
      load[static_cast<std::size_t>(m)] -= demand;
      y(m, pair) = 0;
    }
  }

  void assignPlacements(const std::vector<std::vector<std::uint32_t>>& masks,
                        int m) {
    if (m == sc->esCount()) {
      assignEndpoints(0);
      return;
    }
    for (std::uint32_t mask : masks[static_cast<std::size_t>(m)]) {
      for (int s = 0; s < sc->serviceCount(); ++s)
        work.x(m, s) = (mask >> s) & 1u;
      assignPlacements(masks, m + 1);
    }
    for (int s = 0; s < sc->serviceCount(); ++s) work.x(m, s) = 0;
  }
};

}  // namespace detail

/// Exact minimizer of the single-slot problem over every decision satisfying
/// the placement/offloading constraints. Equal objectives resolve to the
/// lexicographically smallest flattened 0/1 encoding. Refuses search spaces
/// whose estimated candidate count exceeds the configured ceiling.
inline P3Solution solveP3Exhaustive(const Scenario& sc, const NetworkSnapshot& snap,
                                    const DeploymentDecision& z,
                                    const Grid<std::uint8_t>& xPrev, double backlog,
                                    const SpcoParams& params,
                                    double energyBudgetW) {
  if (sc.serviceCount() > 30)
    throw SearchSpaceError("exhaustive backend supports at most 30 services");
  const auto masks = detail::feasiblePlacementMasks(sc, snap, z);
  double xCount = 1.0;
  for (const auto& list : masks) xCount *= static_cast<double>(list.size());
  const double yChoices = 1.0 + z.deployedCount();
  const double yCount = std::pow(yChoices, 2.0 * sc.pairCount());
  if (xCount * yCount > params.exhaustiveCeiling)
    throw SearchSpaceError(
        "P3 candidate estimate " + formatG9(xCount * yCount) +
        " exceeds the exhaustive ceiling " + formatG9(params.exhaustiveCeiling) +
        "; use the greedy backend");

  const Grid<double> delays = detail::endpointDelayMatrix(sc, snap);
  detail::ExhaustiveState st{&sc,    &snap,   &xPrev,         &z,
                             backlog, &params, energyBudgetW, &delays};
  st.work = TacticalDecision::zeros(sc.esCount(), sc.serviceCount(), sc.pairCount());
  st.load.assign(static_cast<std::size_t>(sc.esCount()), 0.0);
  st.assignPlacements(masks, 0);
  return std::move(*st.best);  // all-cloud is always feasible
}

/// Two-phase heuristic stand-in for the exact solver at scale.
///
/// Phase 1 places services greedily while carrying a capacity-aware tentative
/// assignment: each candidate (server, service) is scored by the delay its
/// service's endpoints would actually save given the server's remaining
/// offload capacity, minus upkeep/setup cost and the backlog-weighted power
/// increment, per gigabyte; the best positive candidate is placed and the
/// tentative assignment updated. Without the capacity awareness a saturated
/// nearby server masks the value of placing on an idle farther one.
/// Phase 2 attaches endpoints afresh, largest frequency-weighted load first,
/// to the feasible server with the smallest delay term (cloud when cheaper).
/// Phase 3 runs one round of pairwise reassignment, re-choosing both
/// endpoints of each pair jointly so the exchange term is accounted for.
/// All-cloud remains the fallback, so the result is always feasible.
inline P3Solution solveP3Greedy(const Scenario& sc, const NetworkSnapshot& snap,
                                const DeploymentDecision& z,
                                const Grid<std::uint8_t>& xPrev, double backlog,
                                const SpcoParams& params, double energyBudgetW) {
  const int M = sc.esCount();
  const int S = sc.serviceCount();
  const int N = sc.pairCount();
  const double inf = std::numeric_limits<double>::infinity();
  const Grid<double> delays = detail::endpointDelayMatrix(sc, snap);

  TacticalDecision dec = TacticalDecision::zeros(M, S, N);

  // Remaining per-server room. placeLoadLeft caps the placed core load (the
  // power model's domain); offloadLeft tracks the tentative assignment.
  std::vector<double> storageLeft(static_cast<std::size_t>(M));
  std::vector<double> placeLoadLeft(static_cast<std::size_t>(M));
  std::vector<double> offloadLeft(static_cast<std::size_t>(M));
  for (int m = 0; m < M; ++m) {
    storageLeft[static_cast<std::size_t>(m)] =
        snap.storageCapGb[static_cast<std::size_t>(m)];
    placeLoadLeft[static_cast<std::size_t>(m)] =
        snap.computeCapGhz[static_cast<std::size_t>(m)];
    offloadLeft[static_cast<std::size_t>(m)] =
        snap.computeCapGhz[static_cast<std::size_t>(m)];
  }

  const auto endpointDemand = [&](int e) {
    const int n = e / 2;
    return sc.uePairs[static_cast<std::size_t>(n)].interactionFrequency *
           sc.serviceOf(n).coreLoadGhz;
  };

  // Tentative endpoint assignment maintained through phase 1.
  std::vector<int> tentative(static_cast<std::size_t>(2 * N), -1);
  const auto tentativeDelay = [&](int e) {
    const int m = tentative[static_cast<std::size_t>(e)];
    return m >= 0 ? delays(e, m) : sc.weights.cloudDelay;
  };

  // Phase 1: greedy placement with capacity-aware gains.
  std::vector<std::pair<double, int>> movers;  // (saving, endpoint)
  while (true) {
    double bestScorePerGb = 0.0;
    int bestM = -1, bestS = -1;
    for (int m = 0; m < M; ++m) {
      if (!z.deployed(m)) continue;
      const auto& es = sc.es[static_cast<std::size_t>(m)];
      for (int s = 0; s < S; ++s) {
        if (dec.x(m, s)) continue;
        const auto& svc = sc.services[static_cast<std::size_t>(s)];
        if (svc.storageGb > storageLeft[static_cast<std::size_t>(m)]) continue;
        if (svc.coreLoadGhz > placeLoadLeft[static_cast<std::size_t>(m)]) continue;

        // Delay saved by endpoints that would move here, best savers first,
        // until the server's remaining offload capacity runs out. Capacity
        // freed on the servers they leave is ignored here (conservative).
        movers.clear();
        for (int n = 0; n < N; ++n) {
          if (sc.uePairs[static_cast<std::size_t>(n)].serviceId != s) continue;
          const double f =
              sc.uePairs[static_cast<std::size_t>(n)].interactionFrequency;
          for (int e = 2 * n; e <= 2 * n + 1; ++e) {
            const double saving = f * (tentativeDelay(e) - delays(e, m));
            if (saving > 0.0) movers.emplace_back(saving, e);
          }
        }
        std::sort(movers.begin(), movers.end(),
                  [](const auto& a, const auto& b) { return a.first > b.first; });
        double gain = 0.0;
        double room = offloadLeft[static_cast<std::size_t>(m)];
        for (const auto& [saving, e] : movers) {
          const double demand = endpointDemand(e);
          if (demand > room) continue;
          room -= demand;
          gain += saving;
        }

        const double setup =
            es.maintainUnitCost * svc.storageGb +
            (xPrev(m, s) ? 0.0 : es.placeUnitCost * svc.storageGb);
        const double powerRise =
            (es.maxPowerW - es.idlePowerW) * svc.coreLoadGhz /
            snap.computeCapGhz[static_cast<std::size_t>(m)];
        const double score = params.V * (sc.weights.eta3 * gain -
                                         sc.weights.eta2 * setup) -
                             backlog * powerRise;
        if (score > 0.0 && score / svc.storageGb > bestScorePerGb) {
          bestScorePerGb = score / svc.storageGb;
          bestM = m;
          bestS = s;
        }
      }
    }
    if (bestM < 0) break;
    dec.x(bestM, bestS) = 1;
    const auto& svc = sc.services[static_cast<std::size_t>(bestS)];
    storageLeft[static_cast<std::size_t>(bestM)] -= svc.storageGb;
    placeLoadLeft[static_cast<std::size_t>(bestM)] -= svc.coreLoadGhz;

    // Move the winners over, releasing capacity where they came from.
    movers.clear();
    for (int n = 0; n < N; ++n) {
      if (sc.uePairs[static_cast<std::size_t>(n)].serviceId != bestS) continue;
      const double f =
          sc.uePairs[static_cast<std::size_t>(n)].interactionFrequency;
      for (int e = 2 * n; e <= 2 * n + 1; ++e) {
        const double saving = f * (tentativeDelay(e) - delays(e, bestM));
        if (saving > 0.0) movers.emplace_back(saving, e);
      }
    }
    std::sort(movers.begin(), movers.end(),
              [](const auto& a, const auto& b) { return a.first > b.first; });
    for (const auto& [saving, e] : movers) {
      const double demand = endpointDemand(e);
      if (demand > offloadLeft[static_cast<std::size_t>(bestM)]) continue;
      const int old = tentative[static_cast<std::size_t>(e)];
      if (old >= 0) offloadLeft[static_cast<std::size_t>(old)] += demand;
      offloadLeft[static_cast<std::size_t>(bestM)] -= demand;
      tentative[static_cast<std::size_t>(e)] = bestM;
    }
  }

  // Phase 2: endpoint attachment from scratch, heaviest demand first.
  std::vector<int> attach(static_cast<std::size_t>(2 * N), -1);
  for (int m = 0; m < M; ++m)
    offloadLeft[static_cast<std::size_t>(m)] =
        snap.computeCapGhz[static_cast<std::size_t>(m)];
  std::vector<int> order(static_cast<std::size_t>(2 * N));
  for (int e = 0; e < 2 * N; ++e) order[static_cast<std::size_t>(e)] = e;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const auto demand = [&](int e) {
      const int n = e / 2;
      return sc.uePairs[static_cast<std::size_t>(n)].interactionFrequency *
             sc.serviceOf(n).coreLoadGhz;
    };
    const double da = demand(a), db = demand(b);
    return da != db ? da > db : a < b;
  });
  for (int e : order) {
    const int n = e / 2;
    const int sid = sc.uePairs[static_cast<std::size_t>(n)].serviceId;
    const double demand =
        sc.uePairs[static_cast<std::size_t>(n)].interactionFrequency *
        sc.serviceOf(n).coreLoadGhz;
    double best = sc.weights.cloudDelay;
    int bestM = -1;
    for (int m = 0; m < M; ++m) {
      if (!dec.x(m, sid)) continue;
      if (offloadLeft[static_cast<std::size_t>(m)] < demand) continue;
      if (delays(e, m) < best) {
        best = delays(e, m);
        bestM = m;
      }
    }
    attach[static_cast<std::size_t>(e)] = bestM;
    if (bestM >= 0) offloadLeft[static_cast<std::size_t>(bestM)] -= demand;
  }

  // Phase 3: one pass of pairwise joint reassignment (captures the exchange
  // term that phase 2 ignores).
  const auto pairContribution = [&](int n, int mSrc, int mDst) {
    double c = 0.0;
    c += (mSrc >= 0) ? delays(2 * n, mSrc) : sc.weights.cloudDelay;
    c += (mDst >= 0) ? delays(2 * n + 1, mDst) : sc.weights.cloudDelay;
    if (mSrc >= 0 && mDst >= 0 && mSrc != mDst) {
      const double bits = sc.serviceOf(n).remoteDataMb * kBitsPerMegabyte;
      if (bits > 0.0) {
        const double rate = snap.wiredRateBps(mSrc, mDst);
        c += (rate > 0.0) ? sc.weights.txDelayCoeff * bits / rate : inf;
      }
    }
    return c;
  };
  for (int n = 0; n < N; ++n) {
    const int sid = sc.uePairs[static_cast<std::size_t>(n)].serviceId;
    const double demand =
        sc.uePairs[static_cast<std::size_t>(n)].interactionFrequency *
        sc.serviceOf(n).coreLoadGhz;
    const int curSrc = attach[static_cast<std::size_t>(2 * n)];
    const int curDst = attach[static_cast<std::size_t>(2 * n + 1)];
    if (curSrc >= 0) offloadLeft[static_cast<std::size_t>(curSrc)] += demand;
    if (curDst >= 0) offloadLeft[static_cast<std::size_t>(curDst)] += demand;
    double best = pairContribution(n, curSrc, curDst);
    int bestSrc = curSrc, bestDst = curDst;
    for (int a = -1; a < M; ++a) {
      if (a >= 0 && (!dec.x(a, sid) || !std::isfinite(delays(2 * n, a)))) continue;
      for (int b = -1; b < M; ++b) {
        if (b >= 0 && (!dec.x(b, sid) || !std::isfinite(delays(2 * n + 1, b))))
          continue;
        double need = 0.0;
        if (a >= 0 && b == a) {
          need = 2.0 * demand;
          if (offloadLeft[static_cast<std::size_t>(a)] < need) continue;
        } else {
          if (a >= 0 && offloadLeft[static_cast<std::size_t>(a)] < demand) continue;
          if (b >= 0 && offloadLeft[static_cast<std::size_t>(b)] < demand) continue;
        }
        const double c = pairContribution(n, a, b);
        if (c < best) {
          best = c;
          bestSrc = a;
          bestDst = b;
        }
      }
    }
    attach[static_cast<std::size_t>(2 * n)] = bestSrc;
    attach[static_cast<std::size_t>(2 * n + 1)] = bestDst;
    if (bestSrc >= 0) offloadLeft[static_cast<std::size_t>(bestSrc)] -= demand;
    if (bestDst >= 0) offloadLeft[static_cast<std::size_t>(bestDst)] -= demand;
  }

  for (int n = 0; n < N; ++n) {
    const int mSrc = attach[static_cast<std::size_t>(2 * n)];
    const int mDst = attach[static_cast<std::size_t>(2 * n + 1)];
    if (mSrc >= 0) dec.ySrc(mSrc, n) = 1;
    if (mDst >= 0) dec.yDst(mDst, n) = 1;
  }

  P3Solution sol;
  sol.objective =
      p3Objective(sc, snap, dec, xPrev, z, backlog, params, energyBudgetW);
  sol.tactical = tacticalCost(sc, snap, dec, xPrev);
  sol.decision = std::move(dec);
  return sol;
}

inline P3Solution solveP3(const Scenario& sc, const NetworkSnapshot& snap,
                          const DeploymentDecision& z,
                          const Grid<std::uint8_t>& xPrev, double backlog,
                          const SpcoParams& params, double energyBudgetW) {
  return params.backend == SolverBackend::exhaustive
             ? solveP3Exhaustive(sc, snap, z, xPrev, backlog, params, energyBudgetW)
             : solveP3Greedy(sc, snap, z, xPrev, backlog, params, energyBudgetW);
}

struct SlotOutcome {
  int slot = 0;
  TacticalDecision decision;
  double tactical = 0.0;       // slot cost actually achieved
  double maintain = 0.0;
  double place = 0.0;
  double ueDelay = 0.0;
  double energyW = 0.0;
  double backlogBefore = 0.0;
  double p3Objective = 0.0;
};

struct SpcoResult {
  std::vector<SlotOutcome> slots;
  QueueState queue;
  double energyBudgetW = 0.0;
  double driftBound = 0.0;
  double averageTacticalCost = 0.0;
  double averageMaintainCost = 0.0;
  double averagePlaceCost = 0.0;
  double averageOperationCost = 0.0;
  double averageUeDelayCost = 0.0;
  double averageEnergyW = 0.0;
  double minP3Objective = 0.0;
  double maxP3Objective = 0.0;
};

/// Runs the tactical loop for `slots` slots under a fixed deployment:
/// observe the slot's information, solve the single-slot problem, record the
/// achieved slot cost and power draw, update the queue. Placement starts
/// cold (nothing placed before slot 0). The returned average slot cost is
/// the estimate of the optimal long-term tactical cost that the strategic
/// layer consumes. When `trace` is set, one TSV row per slot is emitted.
inline SpcoResult runSpco(const Scenario& sc, const DeploymentDecision& z,
                          SnapshotSource& source, int slots,
                          const SpcoParams& params, std::ostream* trace = nullptr) {
  if (slots < 1) throw std::invalid_argument("runSpco needs at least one slot");
  SpcoResult res;
  res.energyBudgetW = resolveEnergyBudget(sc, z);
  res.driftBound = computeDriftBound(sc, z, res.energyBudgetW);
  res.minP3Objective = std::numeric_limits<double>::infinity();
  res.maxP3Objective = -std::numeric_limits<double>::infinity();
  res.slots.reserve(static_cast<std::size_t>(slots));

  if (trace)
    *trace << "t\tbacklog\tenergy\toperation\tue_delay\ttactical\n";

  Grid<std::uint8_t> xPrev(sc.esCount(), sc.serviceCount(), 0);
  for (int t = 0; t < slots; ++t) {
    const NetworkSnapshot snap = source.next();
    P3Solution sol = solveP3(sc, snap, z, xPrev, res.queue.backlog, params,
                             res.energyBudgetW);

    SlotOutcome out;
    out.slot = t;
    out.backlogBefore = res.queue.backlog;
    out.p3Objective = sol.objective;
    out.tactical = sol.tactical;
    out.maintain = maintenanceCost(sc, sol.decision.x);
    out.place = placementCost(sc, sol.decision.x, xPrev);
    out.ueDelay = ueDelayCost(sc, snap, sol.decision);
    out.energyW = energy(sc, snap, sol.decision.x, z);

    res.queue = updateQueue(std::move(res.queue), out.energyW, res.energyBudgetW);
    xPrev = sol.decision.x;

    res.averageTacticalCost += out.tactical;
    res.averageMaintainCost += out.maintain;
    res.averagePlaceCost += out.place;
    res.averageUeDelayCost += out.ueDelay;
    res.averageEnergyW += out.energyW;
    res.minP3Objective = std::min(res.minP3Objective, out.p3Objective);
    res.maxP3Objective = std::max(res.maxP3Objective, out.p3Objective);

    if (trace)
      *trace << t << "\t" << formatG9(out.backlogBefore) << "\t"
             << formatG9(out.energyW) << "\t"
             << formatG9(out.maintain + out.place) << "\t"
             << formatG9(out.ueDelay) << "\t" << formatG9(out.tactical) << "\n";

    out.decision = std::move(sol.decision);
    res.slots.push_back(std::move(out));
  }

  const double T = static_cast<double>(slots);
  res.averageTacticalCost /= T;
  res.averageMaintainCost /= T;
  res.averagePlaceCost /= T;
  res.averageUeDelayCost /= T;
  res.averageEnergyW /= T;
  res.averageOperationCost = res.averageMaintainCost + res.averagePlaceCost;
  return res;
}

}  // namespace spjeso
