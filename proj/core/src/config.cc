//
// Project asemol - Copyright 2026 The asemol Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "asemol/config.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "asemol/error.h"
#include "asemol/log.h"

namespace asemol {

using nlohmann::json;

std::string to_string(SplitKind k) { return k == SplitKind::kScaffold ? "scaffold" : "random"; }

std::string to_string(OptimizerKind k) { return k == OptimizerKind::kSgd ? "sgd" : "adamw"; }

SplitKind parse_split_kind(std::string_view text) {
  if (text == "scaffold") return SplitKind::kScaffold;
  if (text == "random") return SplitKind::kRandom;
  throw ConfigError("unknown split '" + std::string(text) + "' (expected scaffold or random)");
}

OptimizerKind parse_optimizer_kind(std::string_view text) {
  if (text == "sgd") return OptimizerKind::kSgd;
  if (text == "adamw") return OptimizerKind::kAdamW;
  throw ConfigError("unknown optimizer '" + std::string(text) + "' (expected sgd or adamw)");
}

namespace {

template <typename T>
void check_grid(const char *name, T value, std::initializer_list<T> grid, bool strict) {
  const bool on_grid = std::any_of(grid.begin(), grid.end(), [&](T g) {
    if constexpr (std::is_floating_point_v<T>) {
      return std::abs(g - value) <= 1e-12 * std::max(1.0, std::abs(g));
    } else {
      return g == value;
    }
  });
  if (on_grid) return;
  std::ostringstream msg;
  msg << name << " = " << value << " is outside the search grid {";
  bool first = true;
  for (T g : grid) {
    msg << (first ? "" : ", ") << g;
    first = false;
  }
  msg << "}";
  if (strict) throw ConfigError(msg.str());
  log_info(msg.str());
}

void require(bool ok, const std::string &message) {
  if (!ok) throw ConfigError(message);
}

template <typename T>
T get_as(const json &j, const std::string &key) {
  try {
    return j.get<T>();
  } catch (const json::exception &) {
    throw ConfigError("config key '" + key + "' has the wrong type");
  }
}

std::size_t get_count(const json &j, const std::string &key) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0))
    throw ConfigError("config key '" + key + "' must be a non-negative integer");
  return j.get<std::size_t>();
}

}  // namespace

void TrainConfig::validate() const {
  encoder.validate();
  require(batch_size >= 1, "batch_size must be positive");
  require(learning_rate > 0.0 && std::isfinite(learning_rate), "learning_rate must be positive");
  require(weight_decay >= 0.0, "weight_decay must be non-negative");
  require(psi > 0.0 && psi <= 1.0, "psi must lie in (0, 1]");
  require(alpha >= 0.0, "alpha must be non-negative");
  require(beta >= 0.0, "beta must be non-negative");
  require(margin > 0.0, "margin must be positive");
  require(gamma >= 0.0, "gamma must be non-negative");
  require(tau > 0.0, "tau must be positive");
  require(num_experts >= 1, "num_experts must be at least 1");
  require(patience >= 1, "patience must be at least 1");
  validate_ratios(split_ratios);

  check_grid<std::size_t>("batch_size", batch_size, {128, 256, 512}, strict_grid);
  check_grid("learning_rate", learning_rate, {0.0005, 0.001, 0.005}, strict_grid);
  check_grid("weight_decay", weight_decay, {0.0, 1e-5, 1e-4}, strict_grid);
  check_grid<std::size_t>("num_experts", num_experts, {1, 3, 5, 7, 9}, strict_grid);
  check_grid("alpha", alpha, {0.01, 0.1, 1.0, 5.0}, strict_grid);
  check_grid("beta", beta, {0.01, 0.1, 1.0, 5.0}, strict_grid);
  check_grid("psi", psi, {0.1, 0.2, 0.3}, strict_grid);
}

std::vector<std::string> config_keys() {
  return {"alpha",         "batch_size",   "beta",        "encoder",      "epochs_rec",
          "epochs_total",  "gamma",        "hidden_dim",  "learning_rate", "margin",
          "noise_scale",   "num_experts",  "num_layers",  "optimizer",    "patience",
          "psi",           "readout",      "seed",        "split",        "split_ratios",
          "strict_grid",   "task_columns", "tau",         "weight_decay"};
}

void apply_config_json(TrainConfig &cfg, std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error &e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  const auto keys = config_keys();
  for (const auto &[key, v] : j.items()) {
    if (std::find(keys.begin(), keys.end(), key) == keys.end())
      throw ConfigError("unknown config key '" + key + "'");
    if (key == "seed") cfg.seed = get_as<std::uint64_t>(v, key);
    else if (key == "encoder") cfg.encoder.variant = parse_encoder_variant(get_as<std::string>(v, key));
    else if (key == "num_layers") cfg.encoder.num_layers = get_count(v, key);
    else if (key == "hidden_dim") cfg.encoder.hidden_dim = get_count(v, key);
    else if (key == "readout") cfg.encoder.readout = parse_readout_kind(get_as<std::string>(v, key));
    else if (key == "batch_size") cfg.batch_size = get_count(v, key);
    else if (key == "learning_rate") cfg.learning_rate = get_as<double>(v, key);
    else if (key == "weight_decay") cfg.weight_decay = get_as<double>(v, key);
    else if (key == "optimizer") cfg.optimizer = parse_optimizer_kind(get_as<std::string>(v, key));
    else if (key == "psi") cfg.psi = get_as<double>(v, key);
    else if (key == "alpha") cfg.alpha = get_as<double>(v, key);
    else if (key == "margin") cfg.margin = get_as<double>(v, key);
    else if (key == "epochs_rec") cfg.epochs_rec = get_count(v, key);
    else if (key == "patience") cfg.patience = get_count(v, key);
    else if (key == "num_experts") cfg.num_experts = get_count(v, key);
    else if (key == "beta") cfg.beta = get_as<double>(v, key);
    else if (key == "gamma") cfg.gamma = get_as<double>(v, key);
    else if (key == "tau") cfg.tau = get_as<double>(v, key);
    else if (key == "noise_scale") cfg.noise_scale = get_as<double>(v, key);
    else if (key == "epochs_total") cfg.epochs_total = get_count(v, key);
    else if (key == "split") cfg.split = parse_split_kind(get_as<std::string>(v, key));
    else if (key == "split_ratios") {
      const auto r = get_as<std::vector<double>>(v, key);
      if (r.size() != 3) throw ConfigError("split_ratios needs three values");
      cfg.split_ratios = {r[0], r[1], r[2]};
    } else if (key == "task_columns") cfg.task_columns = get_as<std::vector<std::string>>(v, key);
    else if (key == "strict_grid") cfg.strict_grid = get_as<bool>(v, key);
  }
}

TrainConfig load_config(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path.string() + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  TrainConfig cfg;
  apply_config_json(cfg, ss.str());
  return cfg;
}

std::string config_to_json(const TrainConfig &cfg) {
  json j;  // std::map backed, so keys come out sorted
  j["seed"] = cfg.seed;
  j["encoder"] = to_string(cfg.encoder.variant);
  j["num_layers"] = cfg.encoder.num_layers;
  j["hidden_dim"] = cfg.encoder.hidden_dim;
  j["readout"] = to_string(cfg.encoder.readout);
  j["batch_size"] = cfg.batch_size;
  j["learning_rate"] = cfg.learning_rate;
  j["weight_decay"] = cfg.weight_decay;
  j["optimizer"] = to_string(cfg.optimizer);
  j["psi"] = cfg.psi;
  j["alpha"] = cfg.alpha;
  j["margin"] = cfg.margin;
  j["epochs_rec"] = cfg.epochs_rec;
  j["patience"] = cfg.patience;
  j["num_experts"] = cfg.num_experts;
  j["beta"] = cfg.beta;
  j["gamma"] = cfg.gamma;
  j["tau"] = cfg.tau;
  j["noise_scale"] = cfg.noise_scale;
  j["epochs_total"] = cfg.epochs_total;
  j["split"] = to_string(cfg.split);
  j["split_ratios"] = std::vector<double>(cfg.split_ratios.begin(), cfg.split_ratios.end());
  j["task_columns"] = cfg.task_columns;
  j["strict_grid"] = cfg.strict_grid;
  return j.dump();
}

TrainConfig config_from_json(std::string_view text) {
  TrainConfig cfg;
  apply_config_json(cfg, text);
  return cfg;
}

}  // namespace asemol
