// Copyright 2026 The TaaS Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "taas/computation/engine.hpp"
#include "taas/config.hpp"
#include "taas/gathering/catalog.hpp"
#include "taas/types.hpp"

namespace taas::sim {

enum class DishonestyMode {
    kBadMouth,  // rate every target at 1 - truth
    kRandom,    // uniform ratings
};

std::string_view to_string(DishonestyMode mode) noexcept;
DishonestyMode parse_dishonesty_mode(std::string_view token);

struct ScenarioSpec {
    std::uint64_t seed{42};
    std::size_t num_providers{10};
    std::size_t offers_per_provider{5};
    std::map<OfferType, double> offer_type_mix{{OfferType::kRan, 1.0},
                                               {OfferType::kSpectrum, 1.0},
                                               {OfferType::kVnfCnf, 1.0},
                                               {OfferType::kSlice, 1.0},
                                               {OfferType::kEdge, 1.0}};
    std::size_t honest_recommenders{5};
    std::size_t dishonest_recommenders{0};
    DishonestyMode dishonesty_mode{DishonestyMode::kBadMouth};
    double sla_violation_rate{0.1};
    int windows{3};
    Timestamp now{1'700'000'000};
    std::int64_t window_seconds{24 * 3600};
    double rating_noise{0.05};

    bool operator==(const ScenarioSpec&) const = default;
};

// Throws TrustError(kConfigInvalid).
const ScenarioSpec& validate_scenario(const ScenarioSpec& spec);
nlohmann::json scenario_to_json(const ScenarioSpec& spec);
// Unknown keys are rejected; missing keys keep defaults.
ScenarioSpec scenario_from_json(const nlohmann::json& doc);
ScenarioSpec load_scenario(const std::filesystem::path& path);

struct ProviderTruth {
    StakeholderId id;
    double quality{0.0};  // latent, in [0,1]
};

struct RecommenderTruth {
    StakeholderId id;
    bool honest{true};
};

struct World {
    ScenarioSpec spec;
    StakeholderId evaluator;
    std::vector<ProviderTruth> providers;
    std::vector<RecommenderTruth> recommenders;
    gathering::InMemoryCatalog catalog;
    // Pre-existing community feedback, in publication order. Includes the
    // evaluator's own past experiences with every provider.
    std::vector<DataLakeEntry> feedback;
};

// Fully determined by spec (one seeded generator, no other entropy).
World generate_world(const ScenarioSpec& spec);

// catalog.jsonl, datalake.jsonl and truth.json under dir.
void write_world(const World& world, const std::filesystem::path& dir);

struct ScenarioReport {
    nlohmann::json report;   // deterministic for a fixed spec and config
    nlohmann::json timings;  // wall-clock phase and pillar times
};

ScenarioReport run_scenario(const ScenarioSpec& spec, const ConfigDocument& cfg);

// Human-readable summary of a report.
std::string render_report_table(const nlohmann::json& report);

// Spearman rank correlation with average ranks for ties. Returns 0 when
// either side is constant or the inputs have fewer than two points.
double spearman(std::span<const double> x, std::span<const double> y);

}  // namespace taas::sim
