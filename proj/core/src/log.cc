//
// Project asemol - Copyright 2026 The asemol Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "asemol/log.h"

#include <cstdlib>
#include <memory>
#include <string>

#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

namespace asemol {

namespace {

std::shared_ptr<spdlog::logger> &logger() {
  static std::shared_ptr<spdlog::logger> instance = [] {
    auto l = spdlog::stderr_color_mt("asemol");
    l->set_pattern("[%H:%M:%S] [%^%l%$] %v");
    l->set_level(spdlog::level::warn);
    return l;
  }();
  return instance;
}

}  // namespace

void configure_logging(std::string_view fallback) {
  const char *env = std::getenv(std::string(kLogLevelEnv).c_str());
  std::string name = env != nullptr ? env : std::string(fallback);
  auto level = spdlog::level::from_str(name);
  if (level == spdlog::level::off && name != "off")
    level = spdlog::level::from_str(std::string(fallback));
  logger()->set_level(level);
}

void log_info(std::string_view message) { logger()->info("{}", message); }

void log_warn(std::string_view message) { logger()->warn("{}", message); }

void log_debug(std::string_view message) { logger()->debug("{}", message); }

}  // namespace asemol
