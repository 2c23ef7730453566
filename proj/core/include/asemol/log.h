//
// Project asemol - Copyright 2026 The asemol Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef ASEMOL_LOG_H_
#define ASEMOL_LOG_H_

#include <string_view>

namespace asemol {

inline constexpr std::string_view kLogLevelEnv = "ASEMOL_LOG_LEVEL";

// Applies ASEMOL_LOG_LEVEL (trace, debug, info, warn, error, off) to the
// library logger, falling back to `fallback` when unset or unrecognized.
void configure_logging(std::string_view fallback = "warn");

void log_info(std::string_view message);
void log_warn(std::string_view message);
void log_debug(std::string_view message);

}  // namespace asemol

#endif  // ASEMOL_LOG_H_
