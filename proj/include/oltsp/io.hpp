#pragma once

// JSON interchange for instances, oracle results and simulation results.

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "oltsp/core.hpp"
#include "oltsp/oracle.hpp"

namespace oltsp {

using json = nlohmann::json;

/// Parses `{variant, requests:[{label,pos,rel}], predictions:[{label,pos}], final_label?}`.
/// Without a predictions array every request is predicted exactly.
inline Instance instance_from_json(const json& j) {
  Instance inst;
  try {
    inst.variant = parse_variant(j.value("variant", std::string("closed")));
    for (const auto& r : j.at("requests")) {
      inst.requests.push_back({r.at("label").get<Label>(), r.at("pos").get<double>(), r.value("rel", 0.0)});
    }
    if (j.contains("predictions")) {
      for (const auto& p : j.at("predictions")) {
        const Label label = p.at("label").get<Label>();
        if (inst.predictions.contains(label)) throw ValidationError("two predictions for label " + std::to_string(label));
        inst.predictions.positions[label] = p.at("pos").get<double>();
      }
    } else {
      inst.predictions = perfect_predictions(inst.requests);
    }
    if (j.contains("final_label") && !j.at("final_label").is_null()) inst.predictions.final_label = j.at("final_label").get<Label>();
  } catch (const json::exception& e) {
    throw ValidationError(std::string("bad instance JSON: ") + e.what());
  }
  validate(inst);
  return inst;
}

inline json to_json(const Instance& inst) {
  json j;
  j["variant"] = std::string(to_string(inst.variant));
  j["requests"] = json::array();
  for (const auto& r : inst.requests) j["requests"].push_back({{"label", r.label}, {"pos", r.position}, {"rel", r.release_time}});
  j["predictions"] = json::array();
  for (const auto& [label, p] : inst.predictions.positions) j["predictions"].push_back({{"label", label}, {"pos", p}});
  if (inst.predictions.final_label) j["final_label"] = *inst.predictions.final_label;
  return j;
}

inline json to_json(const OracleResult& r) {
  return {{"opt", r.opt_makespan}, {"order", r.optimal_order}, {"enders", r.ender_set}};
}

inline json to_json(const Trajectory& tr) {
  json segs = json::array();
  for (const auto& s : tr.segments()) {
    segs.push_back({{"t0", s.start_time}, {"x0", s.start_pos}, {"v", s.velocity}, {"t1", s.end_time}});
  }
  return segs;
}

inline json to_json(const SimResult& sim) {
  json serve = json::object();
  for (const auto& [label, t] : sim.serve_time) serve[std::to_string(label)] = t;
  json rel = json::array();
  for (const auto& r : sim.releases) rel.push_back({{"label", r.label}, {"pos", r.position}, {"rel", r.release_time}});
  return {{"makespan", sim.makespan}, {"t_serve", sim.t_serve}, {"serve_time", serve}, {"releases", rel},
          {"trajectory", to_json(sim.trajectory)}};
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

inline Instance load_instance(const std::string& path) { return instance_from_json(read_json_file(path)); }

}  // namespace oltsp
