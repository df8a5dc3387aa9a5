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
// JSON scenario files. Servers, services, and UE pairs may be given either
// as explicit lists or compactly as a count plus a template; the compact
// form expands deterministically at load time. The full schema is
// documented in docs/scenario_format.md.

#pragma once

#include <fstream>
#include <stdexcept>
#include <string>

#include "json.hpp"
#include "spjeso/cost.hpp"
#include "spjeso/scenario.hpp"

namespace spjeso {

using Json = nlohmann::json;

class ScenarioParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace io_detail {

inline Vec2 parseVec2(const Json& j, const char* what) {
  if (!j.is_array() || j.size() != 2)
    throw ScenarioParseError(std::string(what) + ": expected [x, y]");
  return {j[0].get<double>(), j[1].get<double>()};
}

inline Json dumpVec2(const Vec2& v) { return Json::array({v.x, v.y}); }

inline ServiceSpec parseServiceFields(const Json& j, const ServiceSpec& base) {
  ServiceSpec s = base;
  s.storageGb = j.value("storageGb", s.storageGb);
  s.localLoadGhz = j.value("localLoadGhz", s.localLoadGhz);
  s.coreLoadGhz = j.value("coreLoadGhz", s.coreLoadGhz);
  s.localDataMb = j.value("localDataMb", s.localDataMb);
  s.remoteDataMb = j.value("remoteDataMb", s.remoteDataMb);
  return s;
}

inline EsProfile parseEsFields(const Json& j, const EsProfile& base) {
  EsProfile e = base;
  e.deployCost = j.value("deployCost", e.deployCost);
  e.maintainUnitCost = j.value("maintainUnitCost", e.maintainUnitCost);
  e.placeUnitCost = j.value("placeUnitCost", e.placeUnitCost);
  e.idlePowerW = j.value("idlePowerW", e.idlePowerW);
  e.maxPowerW = j.value("maxPowerW", e.maxPowerW);
  if (j.contains("position")) e.position = parseVec2(j["position"], "es.position");
  return e;
}

}  // namespace io_detail

/// Parses and expands a scenario from JSON; derived defaults are resolved
/// and the result validated. Throws ScenarioParseError on malformed input
/// and ValidationError with the full issue list on invariant violations.
inline Scenario parseScenario(const Json& j) {
  if (!j.is_object()) throw ScenarioParseError("scenario root must be an object");
  Scenario sc;

  if (j.contains("time")) {
    const Json& t = j["time"];
    sc.time.slotsPerPeriod = t.value("slotsPerPeriod", sc.time.slotsPerPeriod);
    sc.time.periods = t.value("periods", sc.time.periods);
    sc.time.slotSeconds = t.value("slotSeconds", sc.time.slotSeconds);
  }

  if (j.contains("distributions")) {
    const Json& d = j["distributions"];
    sc.dist.storageMeanGb = d.value("storageMeanGb", sc.dist.storageMeanGb);
    sc.dist.storageStdGb = d.value("storageStdGb", sc.dist.storageStdGb);
    sc.dist.computeMeanGhz = d.value("computeMeanGhz", sc.dist.computeMeanGhz);
    sc.dist.computeStdGhz = d.value("computeStdGhz", sc.dist.computeStdGhz);
    sc.dist.arenaSideM = d.value("arenaSideM", sc.dist.arenaSideM);
    sc.dist.mobilityStepStdM = d.value("mobilityStepStdM", sc.dist.mobilityStepStdM);
    sc.dist.seed = d.value("seed", sc.dist.seed);
  }

  if (j.contains("channel")) {
    const Json& c = j["channel"];
    sc.channel.bandwidthHz = c.value("bandwidthHz", sc.channel.bandwidthHz);
    sc.channel.pathLossExponent =
        c.value("pathLossExponent", sc.channel.pathLossExponent);
    if (c.contains("noisePowerW"))
      sc.channel.noisePowerW = c["noisePowerW"].get<double>();
    else
      sc.channel.noisePowerW = noisePowerWatts(c.value("noiseDbmPerHz", -174.0),
                                               sc.channel.bandwidthHz);
  } else {
    sc.channel.noisePowerW = noisePowerWatts(-174.0, sc.channel.bandwidthHz);
  }

  if (j.contains("weights")) {
    const Json& w = j["weights"];
    sc.weights.computeDelayCoeff =
        w.value("computeDelayCoeff", sc.weights.computeDelayCoeff);
    sc.weights.txDelayCoeff = w.value("txDelayCoeff", sc.weights.txDelayCoeff);
    sc.weights.eta1 = w.value("eta1", sc.weights.eta1);
    sc.weights.eta2 = w.value("eta2", sc.weights.eta2);
    sc.weights.eta3 = w.value("eta3", sc.weights.eta3);
    if (w.contains("cloudDelay") && !w["cloudDelay"].is_null()) {
      sc.weights.cloudDelay = w["cloudDelay"].get<double>();
      sc.cloudDelayAuto = false;
    }
  }

  if (j.contains("budget")) {
    const Json& b = j["budget"];
    sc.budget.deployBudget = b.value("deployBudget", sc.budget.deployBudget);
    if (b.contains("energyBudget") && !b["energyBudget"].is_null())
      sc.budget.energyBudget = b["energyBudget"].get<double>();
  }
  if (!(sc.budget.deployBudget > 0) && j.contains("es")) {
    // Without an explicit budget, allow any deployment.
    sc.budget.deployBudget = 1.0e18;
  }

  if (j.contains("wiredCapacityBps"))
    sc.wiredCapacityBps = j["wiredCapacityBps"].get<double>();
  else
    sc.wiredCapacityBps = j.value("wiredCapacityMbps", 100.0) * 1.0e6;

  if (j.contains("services")) {
    const Json& s = j["services"];
    if (s.is_array()) {
      int id = 0;
      for (const Json& item : s) {
        ServiceSpec svc = io_detail::parseServiceFields(item, ServiceSpec{});
        svc.id = id++;
        sc.services.push_back(svc);
      }
    } else {
      ServiceSpec templ{.storageGb = 40.0, .coreLoadGhz = 30.0,
                        .localDataMb = 5.0, .remoteDataMb = 2.0};
      if (s.contains("template"))
        templ = io_detail::parseServiceFields(s["template"], templ);
      sc.services = synthesizeServices(s.value("count", 1), templ);
    }
  }

  if (j.contains("es")) {
    const Json& e = j["es"];
    if (e.is_array()) {
      int id = 0;
      for (const Json& item : e) {
        EsProfile es = io_detail::parseEsFields(item, EsProfile{});
        es.id = id++;
        sc.es.push_back(es);
      }
    } else {
      EsProfile templ;
      if (e.contains("profile")) templ = io_detail::parseEsFields(e["profile"], templ);
      sc.es = synthesizeEsGrid(e.value("count", 1), templ, sc.dist.arenaSideM);
    }
  }

  if (j.contains("uePairs")) {
    const Json& u = j["uePairs"];
    sc.ueLayoutFromSeed = !u.is_array();
    if (u.is_array()) {
      int id = 0;
      for (const Json& item : u) {
        UePair p;
        p.id = id++;
        p.serviceId = item.value("serviceId", 0);
        p.interactionFrequency =
            item.value("interactionFrequency", p.interactionFrequency);
        p.txPowerW = item.value("txPowerW", p.txPowerW);
        if (item.contains("srcPosition"))
          p.srcPosition = io_detail::parseVec2(item["srcPosition"], "srcPosition");
        if (item.contains("dstPosition"))
          p.dstPosition = io_detail::parseVec2(item["dstPosition"], "dstPosition");
        sc.uePairs.push_back(p);
      }
    } else {
      UePair templ;
      templ.interactionFrequency =
          u.value("interactionFrequency", templ.interactionFrequency);
      templ.txPowerW = u.value("txPowerW", templ.txPowerW);
      sc.uePairs = synthesizeUePairs(u.value("count", 1), templ,
                                     std::max(sc.serviceCount(), 1),
                                     sc.dist.arenaSideM, sc.dist.seed);
    }
  }

  if (j.contains("spco")) {
    const Json& s = j["spco"];
    sc.spco.V = s.value("V", sc.spco.V);
    sc.spco.exhaustiveCeiling = s.value("exhaustiveCeiling", sc.spco.exhaustiveCeiling);
    const std::string backend = s.value("backend", std::string("greedy"));
    if (backend == "exhaustive") sc.spco.backend = SolverBackend::exhaustive;
    else if (backend == "greedy") sc.spco.backend = SolverBackend::greedy;
    else throw ScenarioParseError("spco.backend must be greedy or exhaustive");
  }

  if (j.contains("maied")) {
    const Json& m = j["maied"];
    sc.maied.mapBeta = m.value("mapBeta", sc.maied.mapBeta);
    sc.maied.mapAlpha = m.value("mapAlpha", sc.maied.mapAlpha);
    sc.maied.freezeInfo = m.value("freezeInfo", sc.maied.freezeInfo);
    sc.maied.streamsPerEval = m.value("streamsPerEval", sc.maied.streamsPerEval);
  }
  sc.maied.periods = sc.time.periods;
  sc.ueLayoutFromSeed = j.value("ueLayoutFromSeed", sc.ueLayoutFromSeed);

  const ValidationReport report = finalizeScenario(sc);
  if (!report.ok()) throw ValidationError(report);
  return sc;
}

inline Scenario loadScenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ScenarioParseError("cannot open scenario file: " + path);
  Json j;
  try {
    in >> j;
  } catch (const Json::exception& e) {
    throw ScenarioParseError(path + ": " + e.what());
  }
  return parseScenario(j);
}

/// Serializes the expanded scenario. Derived values keep their marker (null)
/// so a reload re-derives them; everything else round-trips exactly.
inline Json dumpScenario(const Scenario& sc) {
  Json j;
  j["time"] = {{"slotsPerPeriod", sc.time.slotsPerPeriod},
               {"periods", sc.time.periods},
               {"slotSeconds", sc.time.slotSeconds}};
  j["distributions"] = {{"storageMeanGb", sc.dist.storageMeanGb},
                        {"storageStdGb", sc.dist.storageStdGb},
                        {"computeMeanGhz", sc.dist.computeMeanGhz},
                        {"computeStdGhz", sc.dist.computeStdGhz},
                        {"arenaSideM", sc.dist.arenaSideM},
                        {"mobilityStepStdM", sc.dist.mobilityStepStdM},
                        {"seed", sc.dist.seed}};
  j["channel"] = {{"bandwidthHz", sc.channel.bandwidthHz},
                  {"noisePowerW", sc.channel.noisePowerW},
                  {"pathLossExponent", sc.channel.pathLossExponent}};
  j["weights"] = {{"computeDelayCoeff", sc.weights.computeDelayCoeff},
                  {"txDelayCoeff", sc.weights.txDelayCoeff},
                  {"eta1", sc.weights.eta1},
                  {"eta2", sc.weights.eta2},
                  {"eta3", sc.weights.eta3}};
  if (sc.cloudDelayAuto)
    j["weights"]["cloudDelay"] = nullptr;
  else
    j["weights"]["cloudDelay"] = sc.weights.cloudDelay;
  j["budget"]["deployBudget"] = sc.budget.deployBudget;
  if (sc.budget.energyBudget > 0)
    j["budget"]["energyBudget"] = sc.budget.energyBudget;
  else
    j["budget"]["energyBudget"] = nullptr;
  j["wiredCapacityBps"] = sc.wiredCapacityBps;

  j["services"] = Json::array();
  for (const auto& s : sc.services)
    j["services"].push_back({{"storageGb", s.storageGb},
                             {"localLoadGhz", s.localLoadGhz},
                             {"coreLoadGhz", s.coreLoadGhz},
                             {"localDataMb", s.localDataMb},
                             {"remoteDataMb", s.remoteDataMb}});
  j["es"] = Json::array();
  for (const auto& e : sc.es)
    j["es"].push_back({{"position", io_detail::dumpVec2(e.position)},
                       {"deployCost", e.deployCost},
                       {"maintainUnitCost", e.maintainUnitCost},
                       {"placeUnitCost", e.placeUnitCost},
                       {"idlePowerW", e.idlePowerW},
                       {"maxPowerW", e.maxPowerW}});
  j["uePairs"] = Json::array();
  for (const auto& u : sc.uePairs)
    j["uePairs"].push_back({{"serviceId", u.serviceId},
                            {"interactionFrequency", u.interactionFrequency},
                            {"txPowerW", u.txPowerW},
                            {"srcPosition", io_detail::dumpVec2(u.srcPosition)},
                            {"dstPosition", io_detail::dumpVec2(u.dstPosition)}});

  j["ueLayoutFromSeed"] = sc.ueLayoutFromSeed;
  j["spco"] = {{"V", sc.spco.V},
               {"backend", toString(sc.spco.backend)},
               {"exhaustiveCeiling", sc.spco.exhaustiveCeiling}};
  j["maied"] = {{"mapBeta", sc.maied.mapBeta},
                {"mapAlpha", sc.maied.mapAlpha},
                {"freezeInfo", sc.maied.freezeInfo},
                {"streamsPerEval", sc.maied.streamsPerEval}};
  return j;
}

inline void saveScenario(const Scenario& sc, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ScenarioParseError("cannot write scenario file: " + path);
  out << dumpScenario(sc).dump(2) << "\n";
}

}  // namespace spjeso
