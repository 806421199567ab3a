// Copyright 2026 The TaaS Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <optional>
#include <ostream>

#include "taas/config.hpp"

namespace taas::service {

// Config resolution: explicit path, then $TAAS_CONFIG, then built-in defaults.
ConfigDocument resolve_config(const std::optional<std::filesystem::path>& path);

// Verbs: score, simulate, bench, serve, validate-config. Returns the process
// exit code; errors are written to err as a structured JSON error body.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace taas::service
