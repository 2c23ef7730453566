//
// Project asemol - Copyright 2026 The asemol Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef ASEMOL_REPORT_H_
#define ASEMOL_REPORT_H_

#include <filesystem>
#include <fstream>
#include <string>

#include "asemol/config.h"
#include "asemol/train.h"

namespace asemol {

// One JSON object per line; schema in docs/reports.md. Inapplicable or
// undefined values are null.
std::string report_to_json(const LossReport &report);
std::string summary_to_json(const TrainResult &result, const TrainConfig &cfg,
                            std::size_t dataset_size);

class ReportWriter {
 public:
  explicit ReportWriter(const std::filesystem::path &path);
  void write(const std::string &line);

 private:
  std::ofstream out_;
};

}  // namespace asemol

#endif  // ASEMOL_REPORT_H_
