//
// Project asemol - Copyright 2026 The asemol Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "asemol/report.h"

#include <cmath>

#include <nlohmann/json.hpp>

#include "asemol/error.h"

namespace asemol {

using nlohmann::ordered_json;

namespace {

template <typename T>
ordered_json opt(const std::optional<T> &v) {
  return v ? ordered_json(*v) : ordered_json(nullptr);
}

ordered_json num(double v) { return std::isfinite(v) ? ordered_json(v) : ordered_json(nullptr); }

}  // namespace

std::string report_to_json(const LossReport &r) {
  ordered_json j;
  j["record"] = "epoch";
  j["phase"] = r.phase == Phase::kRecognition ? "recognition" : "experts";
  j["epoch"] = r.epoch;
  j["l_task"] = num(r.l_task);
  j["l_margin"] = opt(r.l_margin);
  j["l_rec"] = opt(r.l_rec);
  j["l_imp"] = opt(r.l_imp);
  j["l_total"] = opt(r.l_total);
  j["auc_valid"] = opt(r.auc_valid);
  j["auc_test"] = opt(r.auc_test);
  j["motifs_changed"] = opt(r.motifs_changed);
  return j.dump();
}

std::string summary_to_json(const TrainResult &result, const TrainConfig &cfg,
                            std::size_t dataset_size) {
  ordered_json j;
  j["record"] = "summary";
  j["seed"] = cfg.seed;
  j["molecules"] = dataset_size;
  j["recognition_epochs"] = result.recognition_epochs;
  j["recognition_early_stop"] = result.recognition_early_stop;
  j["best_epoch"] = result.best_epoch;
  j["best_valid_auc"] = num(result.best_valid_auc);
  j["test_auc"] = num(result.test_auc.mean);
  ordered_json per = ordered_json::array();
  for (double a : result.test_auc.per_task) per.push_back(num(a));
  j["test_auc_per_task"] = per;
  j["diverged"] = result.diverged;
  if (result.diverged) j["divergence"] = result.divergence_message;
  return j.dump();
}

ReportWriter::ReportWriter(const std::filesystem::path &path) : out_(path, std::ios::trunc) {
  if (!out_) throw Error("cannot write report '" + path.string() + "'");
}

void ReportWriter::write(const std::string &line) {
  out_ << line << '\n';
  out_.flush();
}

}  // namespace asemol
