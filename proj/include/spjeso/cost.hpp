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
// Pure evaluation of every delay, cost, energy, and constraint formula of
// the model. Solvers, oracles, and the harness all evaluate through these
// functions; nothing else in the library computes a cost.

#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "spjeso/model.hpp"
#include "spjeso/scenario.hpp"

namespace spjeso {

struct ConstraintCheck {
  bool pass = true;
  double slack = 0.0;
  std::string detail;
};

/// Outcome of checking one tactical decision against the model constraints.
/// A report, not an exception: infeasible inputs simply fail their flag.
struct ConstraintReport {
  ConstraintCheck singleAttach;      // each endpoint on at most one server
  ConstraintCheck storage;           // placed services fit server storage
  ConstraintCheck compute;           // offloaded load fits server compute
  ConstraintCheck serviceAvailable;  // offload only where the service is placed
  ConstraintCheck serverAvailable;   // place only on deployed servers
  ConstraintCheck deployBudget;      // deployment spend within budget
  std::vector<double> storageSlackPerEs;
  std::vector<double> computeSlackPerEs;

  bool feasible() const {
    return singleAttach.pass && storage.pass && compute.pass &&
           serviceAvailable.pass && serverAvailable.pass && deployBudget.pass;
  }
  std::string describe() const {
    std::string s;
    auto add = [&s](const char* name, const ConstraintCheck& c) {
      if (!c.pass) {
        s += name;
        if (!c.detail.empty()) {
          s += " (";
          s += c.detail;
          s += ")";
        }
        s += "; ";
      }
    };
    add("singleAttach", singleAttach);
    add("storage", storage);
    add("compute", compute);
    add("serviceAvailable", serviceAvailable);
    add("serverAvailable", serverAvailable);
    add("deployBudget", deployBudget);
    return s.empty() ? "feasible" : s;
  }
};

/// Thrown by evaluations whose preconditions require a feasible decision.
class InfeasibleDecisionError : public std::runtime_error {
 public:
  InfeasibleDecisionError(std::string what, ConstraintReport report)
      : std::runtime_error(std::move(what)), report_(std::move(report)) {}
  const ConstraintReport& report() const { return report_; }

 private:
  ConstraintReport report_;
};

// Slack tolerance for floating-point accumulation in ratio checks.
inline constexpr double kLoadSlack = 1e-9;

// -- Link and delay model -----------------------------------------------------

/// Shannon rate (bits/s) of the access link between one endpoint and one
/// base station: bandwidth * log2(1 + p * gain / noise) with the power-law
/// gain distance^-exponent. The gain model diverges at zero distance.
inline double accessRate(const Scenario& sc, const NetworkSnapshot& snap,
                         int pair, Side side, int es) {
  const UePair& ue = sc.uePairs[static_cast<std::size_t>(pair)];
  const double d = distance(snap.uePosition(pair, side),
                            sc.es[static_cast<std::size_t>(es)].position);
  if (d <= 0.0) throw std::domain_error("co-located UE/BS");
  const double gain = std::pow(d, -sc.channel.pathLossExponent);
  const double snr = ue.txPowerW * gain / sc.channel.noisePowerW;
  return sc.channel.bandwidthHz * std::log2(1.0 + snr);
}

/// Delay cost of running a pair's core computation on one server.
inline double computeDelayCost(const Scenario& sc, const NetworkSnapshot& snap,
                               int pair, int es) {
  const double cap = snap.computeCapGhz[static_cast<std::size_t>(es)];
  if (!(cap > 0.0)) throw std::domain_error("non-positive compute capacity");
  return sc.weights.computeDelayCoeff * sc.serviceOf(pair).coreLoadGhz / cap;
}

/// Delay cost of moving an endpoint's local data over its access link.
inline double accessDelayCost(const Scenario& sc, const NetworkSnapshot& snap,
                              int pair, Side side, int es) {
  const double bits = sc.serviceOf(pair).localDataMb * kBitsPerMegabyte;
  if (bits == 0.0) return 0.0;
  const double rate = accessRate(sc, snap, pair, side, es);
  if (!(rate > 0.0)) throw std::domain_error("unreachable BS");
  return sc.weights.txDelayCoeff * bits / rate;
}

/// Delay cost of exchanging the pair's remote data between its two serving
/// servers; exactly zero when both endpoints share one server.
inline double exchangeDelayCost(const Scenario& sc, const NetworkSnapshot& snap,
                                int pair, int esSrc, int esDst) {
  if (esSrc == esDst) return 0.0;
  const double bits = sc.serviceOf(pair).remoteDataMb * kBitsPerMegabyte;
  if (bits == 0.0) return 0.0;
  const double rate = snap.wiredRateBps(esSrc, esDst);
  if (!(rate > 0.0)) throw std::domain_error("wired link has no capacity");
  return sc.weights.txDelayCoeff * bits / rate;
}

namespace detail {

/// Scans an endpoint's offloading column. Returns the assigned server or -1
/// for cloud; throws if several servers are set.
inline int attachedEs(const Grid<std::uint8_t>& y, int pair) {
  int found = -1;
  for (int m = 0; m < y.rows(); ++m) {
    if (!y(m, pair)) continue;
    if (found >= 0) {
      ConstraintReport rep;
      rep.singleAttach.pass = false;
      rep.singleAttach.detail =
          "pair " + std::to_string(pair) + " attached to several servers";
      throw InfeasibleDecisionError("endpoint attached to several servers",
                                    rep);
    }
    found = m;
  }
  return found;
}

}  // namespace detail

/// Total interaction-delay cost across all pairs for one slot. Each pair
/// contributes its source and destination access + compute terms, the
/// exchange term between their serving servers, and a flat cloud delay for
/// every endpoint that no server serves; everything scaled by the pair's
/// interaction frequency.
inline double ueDelayCost(const Scenario& sc, const NetworkSnapshot& snap,
                          const TacticalDecision& dec) {
  double total = 0.0;
  for (int n = 0; n < sc.pairCount(); ++n) {
    const double f = sc.uePairs[static_cast<std::size_t>(n)].interactionFrequency;
    const int mSrc = detail::attachedEs(dec.ySrc, n);
    const int mDst = detail::attachedEs(dec.yDst, n);
    double c = 0.0;
    if (mSrc >= 0)
      c += accessDelayCost(sc, snap, n, Side::src, mSrc) +
           computeDelayCost(sc, snap, n, mSrc);
    else
      c += sc.weights.cloudDelay;
    if (mDst >= 0)
      c += accessDelayCost(sc, snap, n, Side::dst, mDst) +
           computeDelayCost(sc, snap, n, mDst);
    else
      c += sc.weights.cloudDelay;
    if (mSrc >= 0 && mDst >= 0) c += exchangeDelayCost(sc, snap, n, mSrc, mDst);
    total += f * c;
  }
  return total;
}

// -- Placement, deployment, and energy ---------------------------------------

/// Routine upkeep of every placed service: unit cost per gigabyte placed.
inline double maintenanceCost(const Scenario& sc, const Grid<std::uint8_t>& x) {
  double total = 0.0;
  for (int m = 0; m < x.rows(); ++m) {
    const double rho = sc.es[static_cast<std::size_t>(m)].maintainUnitCost;
    for (int s = 0; s < x.cols(); ++s)
      if (x(m, s)) total += rho * sc.services[static_cast<std::size_t>(s)].storageGb;
  }
  return total;
}

/// Download/setup cost of newly placed services: only 0 -> 1 transitions
/// against the previous slot count; removals are free.
inline double placementCost(const Scenario& sc, const Grid<std::uint8_t>& x,
                            const Grid<std::uint8_t>& xPrev) {
  double total = 0.0;
  for (int m = 0; m < x.rows(); ++m) {
    const double unit = sc.es[static_cast<std::size_t>(m)].placeUnitCost;
    for (int s = 0; s < x.cols(); ++s)
      if (x(m, s) && !xPrev(m, s))
        total += unit * sc.services[static_cast<std::size_t>(s)].storageGb;
  }
  return total;
}

inline double operationCost(const Scenario& sc, const Grid<std::uint8_t>& x,
                            const Grid<std::uint8_t>& xPrev) {
  return maintenanceCost(sc, x) + placementCost(sc, x, xPrev);
}

inline double deploymentCost(const Scenario& sc, const DeploymentDecision& z) {
  double total = 0.0;
  for (int m = 0; m < z.size(); ++m)
    if (z.deployed(m)) total += sc.es[static_cast<std::size_t>(m)].deployCost;
  return total;
}

/// Power draw (W) of all deployed servers: idle floor plus a linear ramp in
/// CPU utilization from the services placed on the server. Servers that are
/// not deployed draw nothing. Placement loads beyond the server's capacity
/// leave the model's domain and are rejected.
inline double energy(const Scenario& sc, const NetworkSnapshot& snap,
                     const Grid<std::uint8_t>& x, const DeploymentDecision& z) {
  double total = 0.0;
  for (int m = 0; m < z.size(); ++m) {
    if (!z.deployed(m)) continue;
    const auto& es = sc.es[static_cast<std::size_t>(m)];
    double load = 0.0;
    for (int s = 0; s < x.cols(); ++s)
      if (x(m, s)) load += sc.services[static_cast<std::size_t>(s)].coreLoadGhz;
    const double util = load / snap.computeCapGhz[static_cast<std::size_t>(m)];
    if (util > 1.0 + kLoadSlack) throw std::domain_error("compute overload");
    total += es.idlePowerW + (es.maxPowerW - es.idlePowerW) * util;
  }
  return total;
}

/// Per-slot tactical cost: weighted service operation plus UE delay.
inline double tacticalCost(const Scenario& sc, const NetworkSnapshot& snap,
                           const TacticalDecision& dec,
                           const Grid<std::uint8_t>& xPrev) {
  return sc.weights.eta2 * operationCost(sc, dec.x, xPrev) +
         sc.weights.eta3 * ueDelayCost(sc, snap, dec);
}

/// Period-level total: weighted deployment cost plus the slot average of the
/// tactical costs.
inline double totalCost(const Scenario& sc, const DeploymentDecision& z,
                        std::span<const double> perSlotTactical) {
  if (perSlotTactical.empty())
    throw std::invalid_argument("total cost needs at least one slot");
  double sum = 0.0;
  for (double q : perSlotTactical) sum += q;
  return sc.weights.eta1 * deploymentCost(sc, z) +
         sum / static_cast<double>(perSlotTactical.size());
}

// -- Constraint checking ------------------------------------------------------

/// Evaluates every structural constraint of one slot's decisions and the
/// deployment budget, with slack values for the resource constraints.
inline ConstraintReport checkConstraints(const Scenario& sc,
                                         const NetworkSnapshot& snap,
                                         const DeploymentDecision& z,
                                         const TacticalDecision& dec) {
  ConstraintReport rep;
  const int M = sc.esCount();
  const int S = sc.serviceCount();
  const int N = sc.pairCount();

  for (int n = 0; n < N && rep.singleAttach.pass; ++n) {
    for (const auto* y : {&dec.ySrc, &dec.yDst}) {
      int count = 0;
      for (int m = 0; m < M; ++m) count += (*y)(m, n);
      if (count > 1) {
        rep.singleAttach.pass = false;
        rep.singleAttach.detail = "pair " + std::to_string(n);
        break;
      }
    }
  }

  rep.storageSlackPerEs.resize(static_cast<std::size_t>(M));
  rep.computeSlackPerEs.resize(static_cast<std::size_t>(M));
  rep.storage.slack = rep.compute.slack =
      std::numeric_limits<double>::infinity();
  for (int m = 0; m < M; ++m) {
    double used = 0.0;
    for (int s = 0; s < S; ++s)
      if (dec.x(m, s)) used += sc.services[static_cast<std::size_t>(s)].storageGb;
    const double slack = snap.storageCapGb[static_cast<std::size_t>(m)] - used;
    rep.storageSlackPerEs[static_cast<std::size_t>(m)] = slack;
    rep.storage.slack = std::min(rep.storage.slack, slack);
    if (slack < 0) {
      rep.storage.pass = false;
      if (rep.storage.detail.empty()) rep.storage.detail = "es " + std::to_string(m);
    }

    double load = 0.0;
    for (int n = 0; n < N; ++n) {
      const auto& ue = sc.uePairs[static_cast<std::size_t>(n)];
      load += ue.interactionFrequency *
              static_cast<double>(dec.ySrc(m, n) + dec.yDst(m, n)) *
              sc.serviceOf(n).coreLoadGhz;
    }
    const double cslack = snap.computeCapGhz[static_cast<std::size_t>(m)] - load;
    rep.computeSlackPerEs[static_cast<std::size_t>(m)] = cslack;
    rep.compute.slack = std::min(rep.compute.slack, cslack);
    if (cslack < 0) {
      rep.compute.pass = false;
      if (rep.compute.detail.empty()) rep.compute.detail = "es " + std::to_string(m);
    }
  }

  for (int n = 0; n < N && rep.serviceAvailable.pass; ++n) {
    const int s = sc.uePairs[static_cast<std::size_t>(n)].serviceId;
    for (int m = 0; m < M; ++m) {
      if ((dec.ySrc(m, n) || dec.yDst(m, n)) && !dec.x(m, s)) {
        rep.serviceAvailable.pass = false;
        rep.serviceAvailable.detail =
            "pair " + std::to_string(n) + " on es " + std::to_string(m);
        break;
      }
    }
  }

  for (int m = 0; m < M && rep.serverAvailable.pass; ++m) {
    if (z.deployed(m)) continue;
    for (int s = 0; s < S; ++s) {
      if (dec.x(m, s)) {
        rep.serverAvailable.pass = false;
        rep.serverAvailable.detail =
            "service " + std::to_string(s) + " on undeployed es " + std::to_string(m);
        break;
      }
    }
  }

  rep.deployBudget.slack = sc.budget.deployBudget - deploymentCost(sc, z);
  if (rep.deployBudget.slack < 0) rep.deployBudget.pass = false;

  return rep;
}

// -- Scenario finalization ----------------------------------------------------

/// Default cloud delay: ten times the median single-hop edge delay (access
/// plus compute) over all endpoint/server combinations, evaluated on a
/// deterministic snapshot at the distribution means and initial positions.
inline double deriveCloudDelay(const Scenario& sc) {
  NetworkSnapshot snap;
  snap.slot = 0;
  snap.storageCapGb.assign(static_cast<std::size_t>(sc.esCount()),
                           sc.dist.storageMeanGb);
  snap.computeCapGhz.assign(static_cast<std::size_t>(sc.esCount()),
                            sc.dist.computeMeanGhz);
  snap.wiredRateBps = Grid<double>(sc.esCount(), sc.esCount(), sc.wiredCapacityBps);
  snap.uePositions.reserve(static_cast<std::size_t>(sc.endpointCount()));
  for (const auto& u : sc.uePairs) {
    snap.uePositions.push_back(u.srcPosition);
    snap.uePositions.push_back(u.dstPosition);
  }

  std::vector<double> hops;
  hops.reserve(static_cast<std::size_t>(sc.endpointCount() * sc.esCount()));
  for (int n = 0; n < sc.pairCount(); ++n)
    for (Side side : {Side::src, Side::dst})
      for (int m = 0; m < sc.esCount(); ++m)
        hops.push_back(accessDelayCost(sc, snap, n, side, m) +
                       computeDelayCost(sc, snap, n, m));
  std::sort(hops.begin(), hops.end());
  const std::size_t k = hops.size();
  const double median =
      (k % 2 == 1) ? hops[k / 2] : 0.5 * (hops[k / 2 - 1] + hops[k / 2]);
  return 10.0 * median;
}

/// Resolves derived defaults, normalizes, and validates; the canonical entry
/// point for programmatically built scenarios.
inline ValidationReport finalizeScenario(Scenario& sc) {
  if (sc.cloudDelayAuto && !sc.uePairs.empty() && !sc.es.empty() &&
      !sc.services.empty() && sc.channel.noisePowerW > 0)
    sc.weights.cloudDelay = deriveCloudDelay(sc);
  if (sc.budget.energyBudget < 0) sc.budget.energyBudget = 0.0;
  sc.maied.periods = sc.time.periods;
  return validateScenario(sc);
}

}  // namespace spjeso
