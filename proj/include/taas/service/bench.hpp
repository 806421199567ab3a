// Copyright 2026 The TaaS Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "taas/config.hpp"
#include "taas/sim/marketplace.hpp"

namespace taas::service {

struct BenchReport {
    std::size_t offers{0};
    double total_seconds{0.0};
    std::map<std::string, double> phase_seconds;   // gathering, compute, storage
    std::map<std::string, double> pillar_seconds;  // satisfaction, credibility, tf, cf
    bool cold_start{false};
};

struct BenchOptions {
    std::vector<std::size_t> counts{100, 500, 1000};
    std::size_t repetitions{3};
    // Threads for the compute phase. Acceptance runs use 1.
    std::size_t workers{1};
};

// One cold (empty stores) and one warm (stores primed by an untimed run)
// report per count, in count order, cold first. Each report is the
// repetition with the median total time.
std::vector<BenchReport> run_bench(const BenchOptions& options, const ConfigDocument& cfg,
                                   const sim::ScenarioSpec& base);

// The world used for a given offer count: base scaled to enough providers,
// truncated to exactly `offers` offers.
sim::World bench_world(const sim::ScenarioSpec& base, std::size_t offers);

nlohmann::json bench_to_json(const std::vector<BenchReport>& reports);
std::string render_bench_table(const std::vector<BenchReport>& reports);

}  // namespace taas::service
