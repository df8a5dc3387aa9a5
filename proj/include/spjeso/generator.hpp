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
// Seed-driven generation of the slot-by-slot network information: stochastic
// server resources and random-walk endpoint mobility. Consumers may observe
// the distribution parameters ahead of time, but a slot's realization only
// becomes available once the stream reaches that slot.

#pragma once

#include <cmath>
#include <cstdint>
#include <ostream>
#include <vector>

#include "spjeso/rng.hpp"
#include "spjeso/scenario.hpp"

namespace spjeso {

namespace detail {

// Per-slot salt tags. Capacities and moves draw from separate sub-streams,
// so endpoint trajectories do not depend on how many servers exist.
inline constexpr std::uint64_t kSnapshotTag = 0x51AB;
inline constexpr std::uint64_t kMobilityTag = 0x30BE;

/// Reflects a coordinate into [0, side] (triangle-wave fold), which keeps
/// walks inside the arena for steps of any magnitude.
inline double reflect(double v, double side) {
  const double period = 2.0 * side;
  v = std::fmod(v, period);
  if (v < 0) v += period;
  return v > side ? period - v : v;
}

}  // namespace detail

/// Realizes the information of slot `t`. Positions for slot 0 are the
/// configured initial positions; later slots take one Gaussian step from
/// `prevPositions` with reflection at the arena walls. Capacities are
/// truncated normals floored at 1% of their mean, so they stay positive.
/// The draw for slot t depends only on (streamSeed, t) and prevPositions.
inline NetworkSnapshot generateSnapshot(const Scenario& sc,
                                        std::uint64_t streamSeed,
                                        const std::vector<Vec2>& prevPositions,
                                        int t) {
  Rng rng(mixSeed(streamSeed, detail::kSnapshotTag,
                  static_cast<std::uint64_t>(t)));
  NetworkSnapshot snap;
  snap.slot = t;
  const int M = sc.esCount();
  snap.storageCapGb.resize(static_cast<std::size_t>(M));
  snap.computeCapGhz.resize(static_cast<std::size_t>(M));
  for (int m = 0; m < M; ++m)
    snap.storageCapGb[static_cast<std::size_t>(m)] = rng.truncatedNormal(
        sc.dist.storageMeanGb, sc.dist.storageStdGb, 0.01 * sc.dist.storageMeanGb);
  for (int m = 0; m < M; ++m)
    snap.computeCapGhz[static_cast<std::size_t>(m)] = rng.truncatedNormal(
        sc.dist.computeMeanGhz, sc.dist.computeStdGhz, 0.01 * sc.dist.computeMeanGhz);

  snap.wiredRateBps = Grid<double>(M, M, sc.wiredCapacityBps);

  snap.uePositions = prevPositions;
  if (t > 0 && sc.dist.mobilityStepStdM > 0) {
    Rng walk(mixSeed(streamSeed, detail::kMobilityTag,
                     static_cast<std::uint64_t>(t)));
    for (auto& p : snap.uePositions) {
      p.x = detail::reflect(p.x + walk.normal(0.0, sc.dist.mobilityStepStdM),
                            sc.dist.arenaSideM);
      p.y = detail::reflect(p.y + walk.normal(0.0, sc.dist.mobilityStepStdM),
                            sc.dist.arenaSideM);
    }
  }
  return snap;
}

/// Anything that yields snapshots slot by slot.
struct SnapshotSource {
  virtual ~SnapshotSource() = default;
  virtual NetworkSnapshot next() = 0;
};

/// The live information stream: same seed, same stream, bit for bit. Only
/// the already-realized prefix is observable; there is no way to peek at a
/// future slot without consuming the slots before it.
class InfoStream final : public SnapshotSource {
 public:
  InfoStream(const Scenario& sc, std::uint64_t streamSeed, int horizon = 0)
      : sc_(&sc), seed_(streamSeed), horizon_(horizon) {
    positions_.reserve(static_cast<std::size_t>(sc.endpointCount()));
    for (const auto& u : sc.uePairs) {
      positions_.push_back(u.srcPosition);
      positions_.push_back(u.dstPosition);
    }
  }

  const ScenarioDistributions& distributions() const { return sc_->dist; }
  std::uint64_t seed() const { return seed_; }
  int slot() const { return t_; }
  int horizon() const { return horizon_; }

  NetworkSnapshot next() override {
    NetworkSnapshot snap = generateSnapshot(*sc_, seed_, positions_, t_);
    positions_ = snap.uePositions;
    ++t_;
    return snap;
  }

 private:
  const Scenario* sc_;
  std::uint64_t seed_;
  int horizon_;
  int t_ = 0;
  std::vector<Vec2> positions_;
};

/// Replays a fixed snapshot list; used by oracles that must feed solvers the
/// exact same realization several times.
class ReplaySource final : public SnapshotSource {
 public:
  explicit ReplaySource(std::vector<NetworkSnapshot> snaps)
      : snaps_(std::move(snaps)) {}
  NetworkSnapshot next() override { return snaps_.at(idx_++); }
  void rewind() { idx_ = 0; }

 private:
  std::vector<NetworkSnapshot> snaps_;
  std::size_t idx_ = 0;
};

/// Mutually independent streams for repeated evaluations, each seeded from a
/// derived sub-seed of `seed`.
inline std::vector<InfoStream> sampleScenarioBatch(const Scenario& sc,
                                                   std::uint64_t seed, int count,
                                                   int horizon) {
  std::vector<InfoStream> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i)
    out.emplace_back(sc, mixSeed(seed, 0xba7c, static_cast<std::uint64_t>(i)),
                     horizon);
  return out;
}

inline std::vector<NetworkSnapshot> materializeSnapshots(const Scenario& sc,
                                                         std::uint64_t streamSeed,
                                                         int slots) {
  InfoStream stream(sc, streamSeed);
  std::vector<NetworkSnapshot> out;
  out.reserve(static_cast<std::size_t>(slots));
  for (int t = 0; t < slots; ++t) out.push_back(stream.next());
  return out;
}

/// Audit dump: one row per slot, columnar text.
inline void dumpSnapshots(const Scenario& sc, std::uint64_t streamSeed, int slots,
                          std::ostream& os) {
  os << "t";
  for (int m = 0; m < sc.esCount(); ++m) os << "\tstorage_" << m;
  for (int m = 0; m < sc.esCount(); ++m) os << "\tcompute_" << m;
  for (int n = 0; n < sc.pairCount(); ++n)
    os << "\tsrc" << n << "_x\tsrc" << n << "_y\tdst" << n << "_x\tdst" << n
       << "_y";
  os << "\n";
  InfoStream stream(sc, streamSeed);
  for (int t = 0; t < slots; ++t) {
    const NetworkSnapshot snap = stream.next();
    os << t;
    for (double v : snap.storageCapGb) os << "\t" << formatG9(v);
    for (double v : snap.computeCapGhz) os << "\t" << formatG9(v);
    for (int n = 0; n < sc.pairCount(); ++n) {
      const Vec2& s = snap.uePosition(n, Side::src);
      const Vec2& d = snap.uePosition(n, Side::dst);
      os << "\t" << formatG9(s.x) << "\t" << formatG9(s.y) << "\t"
         << formatG9(d.x) << "\t" << formatG9(d.y);
    }
    os << "\n";
  }
}

}  // namespace spjeso
