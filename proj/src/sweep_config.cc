// Copyright 2026 The DPSC Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <string>

#include "dpsc/sweep.h"

namespace dpsc {
namespace {

using nlohmann::json;

std::string Num(double v) {
  std::string s = std::to_string(v);
  s.erase(s.find_last_not_of('0') + 1);
  if (!s.empty() && s.back() == '.') s.pop_back();
  return s;
}

std::vector<double> ReadGrid(const json& doc, const char* key,
                             std::vector<double> fallback) {
  if (!doc.contains(key)) return fallback;
  const json& value = doc[key];
  if (value.is_number()) return {value.get<double>()};
  if (!value.is_array()) {
    throw ConfigError(std::string("'") + key + "' must be a number or list");
  }
  std::vector<double> grid;
  for (const json& v : value) {
    if (!v.is_number()) {
      throw ConfigError(std::string("'") + key + "' entries must be numbers");
    }
    grid.push_back(v.get<double>());
  }
  return grid;
}

DatasetSize ReadSize(const json& v) {
  if (v.is_array() && v.size() == 2) {
    return {v[0].get<int>(), v[1].get<int>()};
  }
  if (v.is_object()) return {v.at("n").get<int>(), v.at("t0").get<int>()};
  throw ConfigError("'sizes' entries must be [n, t0] or {\"n\":..,\"t0\":..}");
}

}  // namespace

std::string ToString(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::kNonPrivate:
      return "nonprivate";
    case Algorithm::kOutput:
      return "dpsc_out";
    case Algorithm::kObjective:
      return "dpsc_obj";
  }
  return "unknown";
}

Algorithm ParseAlgorithm(const std::string& name) {
  if (name == "nonprivate") return Algorithm::kNonPrivate;
  if (name == "dpsc_out" || name == "out") return Algorithm::kOutput;
  if (name == "dpsc_obj" || name == "obj") return Algorithm::kObjective;
  throw ConfigError("unknown algorithm '" + name + "'");
}

void SweepConfig::Validate() const {
  if (algorithms.empty()) throw ConfigError("'algorithms' is empty");
  if (lambdas.empty()) throw ConfigError("'lambda' grid is empty");
  if (sizes.empty()) throw ConfigError("'sizes' grid is empty");
  if (reps < 1) throw ConfigError("'reps' must be >= 1");
  if (!(eps_split > 0.0 && eps_split < 1.0)) {
    throw ConfigError("'eps_split' must lie in (0, 1)");
  }
  if (horizon < 1) throw ConfigError("'horizon' must be >= 1");
  if (!(xi > 0.0 && xi < 1.0)) throw ConfigError("'xi' must lie in (0, 1)");
  if (c && !(*c > 0.0 && std::isfinite(*c))) {
    throw ConfigError("'c' must be positive and finite");
  }
  try {
    latent.Validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("latent: ") + e.what());
  }

  bool any_private = false;
  bool any_objective = false;
  for (Algorithm a : algorithms) {
    any_private |= a != Algorithm::kNonPrivate;
    any_objective |= a == Algorithm::kObjective;
  }
  if (any_private && epsilons.empty()) throw ConfigError("'eps' grid is empty");
  if (any_objective && deltas.empty()) {
    throw ConfigError("'delta' grid is empty");
  }

  for (std::size_t s = 0; s < sizes.size(); ++s) {
    if (sizes[s].n < 1 || sizes[s].t0 < 1) {
      throw ConfigError("invalid cell size[" + std::to_string(s) +
                        "]: n=" + std::to_string(sizes[s].n) +
                        " t0=" + std::to_string(sizes[s].t0) +
                        " (need n >= 1, t0 >= 1)");
    }
  }
  for (double lambda : lambdas) {
    const bool ok = any_private ? lambda > 0.0 : lambda >= 0.0;
    if (!ok || !std::isfinite(lambda)) {
      throw ConfigError("invalid cell lambda=" + Num(lambda) +
                        (any_private ? " (private algorithms need lambda > 0)"
                                     : " (need lambda >= 0)"));
    }
  }
  if (any_private) {
    for (double eps : epsilons) {
      if (!(eps > 0.0) || !std::isfinite(eps)) {
        throw ConfigError("invalid cell eps=" + Num(eps) + " (need eps > 0)");
      }
    }
  }
  if (any_objective) {
    for (double delta : deltas) {
      if (!(delta >= 0.0 && delta < 1.0)) {
        throw ConfigError("invalid cell delta=" + Num(delta) +
                          " (need 0 <= delta < 1)");
      }
    }
  }
}

SweepConfig SweepConfigFromJson(const json& doc) {
  if (!doc.is_object()) throw ConfigError("sweep config must be a JSON object");
  SweepConfig cfg;
  try {
    if (doc.contains("algorithms")) {
      cfg.algorithms.clear();
      for (const json& a : doc["algorithms"]) {
        cfg.algorithms.push_back(ParseAlgorithm(a.get<std::string>()));
      }
    }
    cfg.lambdas = ReadGrid(doc, "lambda", cfg.lambdas);
    cfg.lambda_relative_to_t0 =
        doc.value("lambda_relative_to_t0", cfg.lambda_relative_to_t0);
    cfg.epsilons = ReadGrid(doc, "eps", cfg.epsilons);
    cfg.deltas = ReadGrid(doc, "delta", cfg.deltas);
    if (doc.contains("sizes")) {
      cfg.sizes.clear();
      for (const json& s : doc["sizes"]) cfg.sizes.push_back(ReadSize(s));
    }
    cfg.horizon = doc.value("horizon", cfg.horizon);
    cfg.reps = doc.value("reps", cfg.reps);
    cfg.eps_split = doc.value("eps_split", cfg.eps_split);
    cfg.seed = doc.value("seed", cfg.seed);
    if (doc.contains("dataset_mode")) {
      const auto mode = doc["dataset_mode"].get<std::string>();
      if (mode == "fixed_per_size") {
        cfg.dataset_mode = DatasetMode::kFixedPerSize;
      } else if (mode == "fresh_per_cell") {
        cfg.dataset_mode = DatasetMode::kFreshPerCell;
      } else {
        throw ConfigError("unknown dataset_mode '" + mode + "'");
      }
    }
    if (doc.contains("c") && !doc["c"].is_null()) {
      cfg.c = doc["c"].get<double>();
    }
    cfg.xi = doc.value("xi", cfg.xi);
    if (doc.contains("latent")) {
      const json& l = doc["latent"];
      LatentModelSpec& spec = cfg.latent;
      spec.theta_mean = l.value("theta_mean", spec.theta_mean);
      spec.theta_var = l.value("theta_var", spec.theta_var);
      spec.theta_lo = l.value("theta_lo", spec.theta_lo);
      spec.theta_hi = l.value("theta_hi", spec.theta_hi);
      spec.noise_var = l.value("noise_var", spec.noise_var);
      spec.noise_support = l.value("noise_support", spec.noise_support);
      if (l.contains("target_theta") && !l["target_theta"].is_null()) {
        spec.target_theta = l["target_theta"].get<double>();
      }
      spec.target_is_donor_mean =
          l.value("target_is_donor_mean", spec.target_is_donor_mean);
    }
    cfg.output = doc.value("output", cfg.output);
    cfg.aggregate_output = doc.value("aggregate_output", cfg.aggregate_output);
    if (cfg.aggregate_output.empty() && !cfg.output.empty()) {
      std::string base = cfg.output;
      if (base.size() > 4 && base.compare(base.size() - 4, 4, ".csv") == 0) {
        base.resize(base.size() - 4);
      }
      cfg.aggregate_output = base + "_aggregate.csv";
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed sweep config: ") + e.what());
  }
  cfg.Validate();
  return cfg;
}

json ToJson(const SweepConfig& cfg) {
  json doc;
  json algorithms = json::array();
  for (Algorithm a : cfg.algorithms) algorithms.push_back(ToString(a));
  doc["algorithms"] = std::move(algorithms);
  doc["lambda"] = cfg.lambdas;
  doc["lambda_relative_to_t0"] = cfg.lambda_relative_to_t0;
  doc["eps"] = cfg.epsilons;
  doc["delta"] = cfg.deltas;
  json sizes = json::array();
  for (const DatasetSize& s : cfg.sizes) sizes.push_back({s.n, s.t0});
  doc["sizes"] = std::move(sizes);
  doc["horizon"] = cfg.horizon;
  doc["reps"] = cfg.reps;
  doc["eps_split"] = cfg.eps_split;
  doc["seed"] = cfg.seed;
  doc["dataset_mode"] = cfg.dataset_mode == DatasetMode::kFixedPerSize
                            ? "fixed_per_size"
                            : "fresh_per_cell";
  doc["c"] = cfg.c ? json(*cfg.c) : json();
  doc["xi"] = cfg.xi;
  const LatentModelSpec& spec = cfg.latent;
  doc["latent"] = {
      {"theta_mean", spec.theta_mean},
      {"theta_var", spec.theta_var},
      {"theta_lo", spec.theta_lo},
      {"theta_hi", spec.theta_hi},
      {"noise_var", spec.noise_var},
      {"noise_support", spec.noise_support},
      {"target_theta", spec.target_theta ? json(*spec.target_theta) : json()},
      {"target_is_donor_mean", spec.target_is_donor_mean},
  };
  doc["output"] = cfg.output;
  doc["aggregate_output"] = cfg.aggregate_output;
  return doc;
}

}  // namespace dpsc
