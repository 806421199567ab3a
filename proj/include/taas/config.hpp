// Copyright 2026 The TaaS Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>

#include <json.hpp>

#include "taas/types.hpp"

namespace taas {

// Every tunable weight of the trust model. Defaults are working values,
// not taken from any measurement; all of them are overridable from the
// config document.
struct ModelConfig {
    double psi{0.5};    // provider satisfaction weight
    double phi{0.5};    // offer satisfaction weight
    double alpha{0.7};  // direct-experience term
    double beta{0.3};   // community term
    TimeWindowWeights window_weights{{0.6, 0.3, 0.1}};
    std::int64_t window_seconds{24 * 3600};
    double decay_half_life{7.0 * 24 * 3600};  // seconds
    double recommender_threshold{0.6};
    std::size_t recommender_list_size{10};
    double tf_floor{0.5};
    std::size_t tf_reference_count{20};
    double cold_start_prior{0.5};
    std::string assessor{"peertrust"};
    std::size_t max_workers{1};

    bool operator==(const ModelConfig&) const = default;
};

// Throws TrustError with kWeightSum, kWindowWeights or kRange.
const ModelConfig& validate_config(const ModelConfig& cfg);

// Exactly one rule per event kind. DECAY_TICK is driven by the decay law and
// carries no rule.
class PolicySet {
  public:
    PolicySet() = default;

    static PolicySet defaults();

    // Throws TrustError(kConfigInvalid) on a duplicate kind or an
    // out-of-range weight.
    void add(const PolicyRule& rule);
    [[nodiscard]] std::optional<PolicyRule> find(EventKind kind) const;
    [[nodiscard]] const std::map<EventKind, PolicyRule>& rules() const noexcept { return rules_; }

    bool operator==(const PolicySet&) const = default;

  private:
    std::map<EventKind, PolicyRule> rules_;
};

struct ConfigDocument {
    ModelConfig model;
    PolicySet policies{PolicySet::defaults()};
};

// Parses a config tree. Keys mirror ModelConfig field names; missing keys
// keep their defaults, unknown keys are rejected. A "policies" subtree, if
// present, replaces the default rule set entirely.
// Throws TrustError(kConfigInvalid) for structural problems and the
// validate_config codes for semantic ones.
ConfigDocument parse_config(const nlohmann::json& doc);
ConfigDocument load_config(const std::filesystem::path& path);

nlohmann::json config_to_json(const ConfigDocument& doc);

}  // namespace taas
