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
#include <numeric>
#include <string>
#include <vector>

#include "spjeso/common.hpp"

namespace spjeso {

/// One service, the remote half of a distributed interactive application,
/// described by its storage/compute/data-volume profile <u, b, c, d, e>.
/// The local (client-side) load b is normalized to zero: it never offloads.
struct ServiceSpec {
  int id = 0;
  double storageGb = 0.0;     // u: storage taken on a hosting server
  double localLoadGhz = 0.0;  // b: client-side load, normalized to 0
  double coreLoadGhz = 0.0;   // c: offloadable core computation load
  double localDataMb = 0.0;   // d: client<->service data per interaction
  double remoteDataMb = 0.0;  // e: service<->service data per interaction
  bool operator==(const ServiceSpec&) const = default;
};

enum class Side : int { src = 0, dst = 1 };

/// A source/destination pair of mobile users interacting through one service.
struct UePair {
  int id = 0;
  int serviceId = 0;                  // s_n: index into the service catalog
  double interactionFrequency = 0.5;  // f_n in [0, 1]
  Vec2 srcPosition;
  Vec2 dstPosition;
  double txPowerW = 0.1;  // p: uplink transmit power per endpoint
  bool operator==(const UePair&) const = default;

  const Vec2& position(Side side) const {
    return side == Side::src ? srcPosition : dstPosition;
  }
};

/// A base station and the edge server that can be deployed on it.
struct EsProfile {
  int id = 0;
  Vec2 position;
  double deployCost = 100.0;       // q
  double maintainUnitCost = 0.1;   // rho, per gigabyte placed
  double placeUnitCost = 0.5;      // per gigabyte newly placed
  double idlePowerW = 100.0;       // CPU power when idle
  double maxPowerW = 200.0;        // CPU power at full utilization
  bool operator==(const EsProfile&) const = default;
};

/// Radio access channel model shared by all UE<->BS links.
struct ChannelParams {
  double bandwidthHz = 2.0e6;      // W
  double noisePowerW = 0.0;        // N0, total over the band
  double pathLossExponent = 4.0;   // in [2, 4]; gain = distance^-exponent
  bool operator==(const ChannelParams&) const = default;
};

/// Coefficients weighing the cost components against each other.
struct CostWeights {
  double computeDelayCoeff = 1.0;  // alpha: cost per second of computation
  double txDelayCoeff = 1.0;       // cost per second of transmission
  double eta1 = 1.0;               // deployment weight
  double eta2 = 1.0;               // service operation weight
  double eta3 = 1.0;               // UE delay weight
  double cloudDelay = 0.0;         // flat delay cost of being served by cloud
  bool operator==(const CostWeights&) const = default;
};

/// Long-horizon budgets. energyBudget <= 0 selects the derived default of
/// 150 W per deployed server (at least one), resolved per deployment.
struct BudgetConfig {
  double deployBudget = 0.0;  // total deployment spend allowed
  double energyBudget = 0.0;  // long-term average power budget (W)
  bool operator==(const BudgetConfig&) const = default;
};

/// Two-timescale structure: each period holds slotsPerPeriod slots; the
/// deployment decision is revised once per period.
struct TimeStructure {
  int slotsPerPeriod = 1;  // T
  int periods = 1;         // L
  double slotSeconds = kSecondsPerSlot;
  bool operator==(const TimeStructure&) const = default;
};

/// Per-period deployment: which base stations host a deployed edge server.
struct DeploymentDecision {
  std::vector<std::uint8_t> z;

  static DeploymentDecision zeros(int esCount) {
    return {std::vector<std::uint8_t>(static_cast<std::size_t>(esCount), 0)};
  }
  static DeploymentDecision ones(int esCount) {
    return {std::vector<std::uint8_t>(static_cast<std::size_t>(esCount), 1)};
  }

  int size() const { return static_cast<int>(z.size()); }
  bool deployed(int m) const { return z[static_cast<std::size_t>(m)] != 0; }
  int deployedCount() const {
    return std::accumulate(z.begin(), z.end(), 0);
  }
  std::string bitstring() const {
    std::string s;
    s.reserve(z.size());
    for (auto b : z) s.push_back(b ? '1' : '0');
    return s;
  }
  bool operator==(const DeploymentDecision&) const = default;
};

/// Per-slot tactical decision: the service placement matrix x (servers x
/// services) and the offloading matrices for source and destination
/// endpoints (servers x pairs). All entries are 0/1.
struct TacticalDecision {
  Grid<std::uint8_t> x;
  Grid<std::uint8_t> ySrc;
  Grid<std::uint8_t> yDst;

  static TacticalDecision zeros(int esCount, int serviceCount, int pairCount) {
    TacticalDecision d;
    d.x = Grid<std::uint8_t>(esCount, serviceCount, 0);
    d.ySrc = Grid<std::uint8_t>(esCount, pairCount, 0);
    d.yDst = Grid<std::uint8_t>(esCount, pairCount, 0);
    return d;
  }

  const Grid<std::uint8_t>& y(Side side) const {
    return side == Side::src ? ySrc : yDst;
  }
  Grid<std::uint8_t>& y(Side side) { return side == Side::src ? ySrc : yDst; }

  /// Index of the server an endpoint is attached to, or -1 for cloud.
  /// Returns the lowest-index server if several are (infeasibly) set.
  int assignedEs(int pair, Side side) const {
    const auto& m = y(side);
    for (int r = 0; r < m.rows(); ++r)
      if (m(r, pair)) return r;
    return -1;
  }

  bool operator==(const TacticalDecision&) const = default;
};

/// One slot's realized network information: per-server available storage and
/// compute, the wired backbone capacities, and the endpoint positions that
/// drive the access channels. The wired matrix is symmetric; its diagonal is
/// a same-node marker (exchange within one server costs exactly zero) and is
/// never read as a rate.
struct NetworkSnapshot {
  int slot = 0;
  std::vector<double> storageCapGb;   // per server
  std::vector<double> computeCapGhz;  // per server
  Grid<double> wiredRateBps;          // per server pair, diagonal unused
  std::vector<Vec2> uePositions;      // [2n] = src of pair n, [2n+1] = dst

  int esCount() const { return static_cast<int>(storageCapGb.size()); }
  const Vec2& uePosition(int pair, Side side) const {
    return uePositions[static_cast<std::size_t>(2 * pair) +
                       (side == Side::dst ? 1 : 0)];
  }
  bool operator==(const NetworkSnapshot&) const = default;
};

/// Cost components of one evaluated configuration. operation and tactical
/// are maintained redundantly (operation = maintain + place, tactical =
/// eta2*operation + eta3*ueDelay) and checked by tests.
struct CostBreakdown {
  double deploy = 0.0;
  double maintain = 0.0;
  double place = 0.0;
  double operation = 0.0;
  double ueDelay = 0.0;
  double energyW = 0.0;
  double tactical = 0.0;
  double total = 0.0;
  bool operator==(const CostBreakdown&) const = default;
};

enum class SolverBackend { exhaustive, greedy };

inline std::string toString(SolverBackend b) {
  return b == SolverBackend::exhaustive ? "exhaustive" : "greedy";
}

/// Tuning of the per-slot tactical solver. V trades queue stability against
/// cost: larger V weighs the slot cost more and lets the energy deficit
/// queue grow larger before it pushes back.
struct SpcoParams {
  double V = 100.0;
  SolverBackend backend = SolverBackend::greedy;
  double exhaustiveCeiling = 1.0e7;  // max candidate (x, y) pairs enumerated
  bool operator==(const SpcoParams&) const = default;
};

/// Tuning of the deployment sampler. mapBeta is the inverse temperature of
/// the target distribution; mapAlpha scales the transition rate and equals 1
/// by default, the only value for which the discrete-time chain is
/// reversible with respect to that target.
struct MaiedParams {
  double mapBeta = 5.0;
  double mapAlpha = 1.0;
  int periods = 1;          // L: chain length, one state per period
  bool freezeInfo = false;  // evaluate on one fixed info batch per run
  int streamsPerEval = 1;   // realizations averaged per evaluation
  bool operator==(const MaiedParams&) const = default;
};

}  // namespace spjeso
