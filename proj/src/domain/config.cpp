// Copyright 2026 The TaaS Authors
// SPDX-License-Identifier: Apache-2.0

#include "taas/config.hpp"

#include <cmath>
#include <fstream>
#include <set>

#include "taas/error.hpp"
#include "taas/json_io.hpp"

namespace taas {

namespace {

constexpr double kSumTolerance = 1e-9;

void check_fraction(double value, const char* name) {
    if (!std::isfinite(value) || !in_unit(value)) {
        fail(ErrorCode::kRange, std::string(name) + " outside [0,1]");
    }
}

}  // namespace

const ModelConfig& validate_config(const ModelConfig& cfg) {
    check_fraction(cfg.psi, "psi");
    check_fraction(cfg.phi, "phi");
    check_fraction(cfg.alpha, "alpha");
    check_fraction(cfg.beta, "beta");
    check_fraction(cfg.recommender_threshold, "recommender_threshold");
    check_fraction(cfg.tf_floor, "tf_floor");
    check_fraction(cfg.cold_start_prior, "cold_start_prior");
    if (!(cfg.decay_half_life > 0.0) || !std::isfinite(cfg.decay_half_life)) {
        fail(ErrorCode::kRange, "decay_half_life must be positive");
    }
    if (cfg.window_seconds <= 0) {
        fail(ErrorCode::kRange, "window_seconds must be positive");
    }
    if (cfg.recommender_list_size == 0) {
        fail(ErrorCode::kRange, "recommender_list_size must be >= 1");
    }
    if (cfg.tf_reference_count == 0) {
        fail(ErrorCode::kRange, "tf_reference_count must be >= 1");
    }
    if (cfg.max_workers == 0) {
        fail(ErrorCode::kRange, "max_workers must be >= 1");
    }

    if (std::abs(cfg.psi + cfg.phi - 1.0) > kSumTolerance) {
        fail(ErrorCode::kWeightSum, "psi + phi must equal 1");
    }
    if (std::abs(cfg.alpha + cfg.beta - 1.0) > kSumTolerance) {
        fail(ErrorCode::kWeightSum, "alpha + beta must equal 1");
    }

    const auto& eps = cfg.window_weights.weights;
    if (eps.empty()) {
        fail(ErrorCode::kWindowWeights, "at least one window weight is required");
    }
    double sum = 0.0;
    for (std::size_t k = 0; k < eps.size(); ++k) {
        if (!std::isfinite(eps[k]) || eps[k] <= 0.0 || eps[k] > 1.0) {
            fail(ErrorCode::kWindowWeights, "window weight outside (0,1]");
        }
        if (k > 0 && eps[k] > eps[k - 1]) {
            fail(ErrorCode::kWindowWeights, "window weights must not increase with age");
        }
        sum += eps[k];
    }
    if (std::abs(sum - 1.0) > kSumTolerance) {
        fail(ErrorCode::kWindowWeights, "window weights must sum to 1");
    }

    if (cfg.assessor != "peertrust") {
        fail(ErrorCode::kConfigInvalid, "unknown assessor '" + cfg.assessor + "'");
    }
    return cfg;
}

PolicySet PolicySet::defaults() {
    PolicySet set;
    set.add({EventKind::kSecurityThreat, DeltaMode::kPunish, 0.8});
    set.add({EventKind::kSlaViolation, DeltaMode::kPunish, 0.5});
    set.add({EventKind::kExecutionFailure, DeltaMode::kPunish, 0.4});
    set.add({EventKind::kPolicyChange, DeltaMode::kPunish, 0.2});
    set.add({EventKind::kSuccessfulInteraction, DeltaMode::kReward, 0.3});
    return set;
}

void PolicySet::add(const PolicyRule& rule) {
    if (rule.event_kind == EventKind::kDecayTick) {
        fail(ErrorCode::kConfigInvalid, "DECAY_TICK is governed by decay_half_life, not a rule");
    }
    if (!in_unit(rule.weight)) {
        fail(ErrorCode::kConfigInvalid, "policy weight outside [0,1]");
    }
    if (!rules_.emplace(rule.event_kind, rule).second) {
        fail(ErrorCode::kConfigInvalid,
             "duplicate policy for " + std::string(to_string(rule.event_kind)));
    }
}

std::optional<PolicyRule> PolicySet::find(EventKind kind) const {
    const auto it = rules_.find(kind);
    if (it == rules_.end()) {
        return std::nullopt;
    }
    return it->second;
}

namespace {

template <typename T>
T typed(const nlohmann::json& value, const std::string& key) {
    try {
        return value.get<T>();
    } catch (const nlohmann::json::exception&) {
        fail(ErrorCode::kConfigInvalid, "config key '" + key + "' has the wrong type");
    }
}

std::size_t count_field(const nlohmann::json& value, const std::string& key) {
    const auto n = typed<std::int64_t>(value, key);
    if (n < 0) {
        fail(ErrorCode::kRange, "config key '" + key + "' must be non-negative");
    }
    return static_cast<std::size_t>(n);
}

PolicySet parse_policies(const nlohmann::json& tree) {
    if (!tree.is_object()) {
        fail(ErrorCode::kConfigInvalid, "'policies' must be an object keyed by event kind");
    }
    PolicySet set;
    for (const auto& [kind_token, body] : tree.items()) {
        EventKind kind{};
        DeltaMode mode{};
        try {
            kind = parse_event_kind(kind_token);
            if (!body.is_object()) {
                fail(ErrorCode::kConfigInvalid, "policy body must be an object");
            }
            for (const auto& [key, _] : body.items()) {
                if (key != "delta_mode" && key != "weight") {
                    fail(ErrorCode::kConfigInvalid, "unknown policy key '" + key + "'");
                }
            }
            mode = parse_delta_mode(typed<std::string>(body.at("delta_mode"), "delta_mode"));
        } catch (const nlohmann::json::exception& e) {
            fail(ErrorCode::kConfigInvalid, std::string("policy '") + kind_token + "': " + e.what());
        } catch (const TrustError& e) {
            fail(ErrorCode::kConfigInvalid, e.what());
        }
        if (!body.contains("weight")) {
            fail(ErrorCode::kConfigInvalid, "policy '" + kind_token + "' is missing 'weight'");
        }
        set.add({kind, mode, typed<double>(body.at("weight"), "weight")});
    }
    return set;
}

}  // namespace

ConfigDocument parse_config(const nlohmann::json& doc) {
    if (!doc.is_object()) {
        fail(ErrorCode::kConfigInvalid, "config document must be an object");
    }
    ConfigDocument out;
    ModelConfig& m = out.model;
    for (const auto& [key, value] : doc.items()) {
        if (key == "psi") m.psi = typed<double>(value, key);
        else if (key == "phi") m.phi = typed<double>(value, key);
        else if (key == "alpha") m.alpha = typed<double>(value, key);
        else if (key == "beta") m.beta = typed<double>(value, key);
        else if (key == "window_weights") m.window_weights.weights = typed<std::vector<double>>(value, key);
        else if (key == "window_seconds") m.window_seconds = typed<std::int64_t>(value, key);
        else if (key == "decay_half_life") m.decay_half_life = typed<double>(value, key);
        else if (key == "recommender_threshold") m.recommender_threshold = typed<double>(value, key);
        else if (key == "recommender_list_size") m.recommender_list_size = count_field(value, key);
        else if (key == "tf_floor") m.tf_floor = typed<double>(value, key);
        else if (key == "tf_reference_count") m.tf_reference_count = count_field(value, key);
        else if (key == "cold_start_prior") m.cold_start_prior = typed<double>(value, key);
        else if (key == "assessor") m.assessor = typed<std::string>(value, key);
        else if (key == "max_workers") m.max_workers = count_field(value, key);
        else if (key == "policies") out.policies = parse_policies(value);
        else fail(ErrorCode::kConfigInvalid, "unknown config key '" + key + "'");
    }
    validate_config(m);
    return out;
}

ConfigDocument load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        fail(ErrorCode::kConfigInvalid, "cannot open config file " + path.string());
    }
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        fail(ErrorCode::kConfigInvalid, std::string("config parse error: ") + e.what());
    }
    return parse_config(doc);
}

nlohmann::json config_to_json(const ConfigDocument& doc) {
    const ModelConfig& m = doc.model;
    nlohmann::json policies = nlohmann::json::object();
    for (const auto& [kind, rule] : doc.policies.rules()) {
        policies[std::string(to_string(kind))] = {
            {"delta_mode", std::string(to_string(rule.delta_mode))}, {"weight", rule.weight}};
    }
    return {{"psi", m.psi},
            {"phi", m.phi},
            {"alpha", m.alpha},
            {"beta", m.beta},
            {"window_weights", m.window_weights.weights},
            {"window_seconds", m.window_seconds},
            {"decay_half_life", m.decay_half_life},
            {"recommender_threshold", m.recommender_threshold},
            {"recommender_list_size", m.recommender_list_size},
            {"tf_floor", m.tf_floor},
            {"tf_reference_count", m.tf_reference_count},
            {"cold_start_prior", m.cold_start_prior},
            {"assessor", m.assessor},
            {"max_workers", m.max_workers},
            {"policies", policies}};
}

}  // namespace taas
