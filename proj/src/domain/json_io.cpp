// Copyright 2026 The TaaS Authors
// SPDX-License-Identifier: Apache-2.0

#include "taas/json_io.hpp"

namespace taas {

using nlohmann::json;

namespace {

template <typename T>
std::optional<T> optional_field(const json& j, const char* key) {
    if (!j.contains(key) || j.at(key).is_null()) {
        return std::nullopt;
    }
    return required<T>(j, key);
}

double unit_field(const json& j, const char* key) {
    const auto value = required<double>(j, key);
    if (!in_unit(value)) {
        fail(ErrorCode::kRange, std::string("field '") + key + "' outside [0,1]");
    }
    return value;
}

}  // namespace

void to_json(json& j, const StakeholderId& s) { j = json{{"id", s.id}, {"domain", s.domain}}; }

void from_json(const json& j, StakeholderId& s) {
    if (j.is_string()) {
        s = make_stakeholder(j.get<std::string>());
        return;
    }
    s = make_stakeholder(required<std::string>(j, "id"),
                         j.contains("domain") ? required<std::string>(j, "domain") : std::string{});
}

void to_json(json& j, OfferType t) { j = std::string(to_string(t)); }

void from_json(const json& j, OfferType& t) {
    if (!j.is_string()) {
        fail(ErrorCode::kInvalidValue, "offer type must be a string");
    }
    t = parse_offer_type(j.get<std::string>());
}

void to_json(json& j, const ProductOffer& o) {
    j = json{{"offer_id", o.offer_id},
             {"provider", o.provider},
             {"offer_type", o.offer_type},
             {"location", o.location},
             {"created_at", o.created_at}};
}

void from_json(const json& j, ProductOffer& o) {
    o.offer_id = required<std::string>(j, "offer_id");
    if (o.offer_id.empty()) {
        fail(ErrorCode::kInvalidValue, "offer_id must be non-empty");
    }
    o.provider = required<StakeholderId>(j, "provider");
    o.offer_type = required<OfferType>(j, "offer_type");
    o.location = j.contains("location") ? required<std::string>(j, "location") : std::string{};
    o.created_at = required<Timestamp>(j, "created_at");
    if (o.created_at <= 0) {
        fail(ErrorCode::kRange, "created_at must be positive");
    }
}

void to_json(json& j, const ProviderStats& s) {
    j = json{{"available_assets", s.available_assets},
             {"total_assets", s.total_assets},
             {"available_assets_location", s.available_assets_location},
             {"total_assets_location", s.total_assets_location},
             {"predicted_violations", s.predicted_violations},
             {"managed_violations", s.managed_violations},
             {"unmanaged_violations", s.unmanaged_violations},
             {"unpredicted_violations", s.unpredicted_violations},
             {"window_index", s.window_index}};
}

void from_json(const json& j, ProviderStats& s) {
    s.available_assets = required<std::int64_t>(j, "available_assets");
    s.total_assets = required<std::int64_t>(j, "total_assets");
    s.available_assets_location = required<std::int64_t>(j, "available_assets_location");
    s.total_assets_location = required<std::int64_t>(j, "total_assets_location");
    s.predicted_violations = required<std::int64_t>(j, "predicted_violations");
    s.managed_violations = required<std::int64_t>(j, "managed_violations");
    s.unmanaged_violations = required<std::int64_t>(j, "unmanaged_violations");
    s.unpredicted_violations = required<std::int64_t>(j, "unpredicted_violations");
    s.window_index = required<int>(j, "window_index");
    validate_stats(s);
}

void to_json(json& j, const Recommendation& r) {
    j = json{{"recommender", r.recommender},
             {"target", r.target},
             {"offer_type", r.offer_type ? json(*r.offer_type) : json(nullptr)},
             {"rating", r.rating},
             {"issued_at", r.issued_at}};
}

void from_json(const json& j, Recommendation& r) {
    r.recommender = required<StakeholderId>(j, "recommender");
    r.target = required<StakeholderId>(j, "target");
    if (r.recommender == r.target) {
        fail(ErrorCode::kInvalidValue, "recommender must differ from target");
    }
    r.offer_type = optional_field<OfferType>(j, "offer_type");
    r.rating = unit_field(j, "rating");
    r.issued_at = required<Timestamp>(j, "issued_at");
}

void to_json(json& j, const TrustScore& s) {
    j = json{{"evaluator", s.evaluator},
             {"target", s.target},
             {"offer_id", s.offer_id ? json(*s.offer_id) : json(nullptr)},
             {"score", s.score},
             {"satisfaction", s.satisfaction},
             {"credibility", s.credibility},
             {"transaction_factor", s.transaction_factor},
             {"community_factor", s.community_factor},
             {"version", s.version},
             {"computed_at", s.computed_at},
             {"cold_start", s.cold_start},
             {"degraded", s.degraded}};
}

void from_json(const json& j, TrustScore& s) {
    s.evaluator = required<StakeholderId>(j, "evaluator");
    s.target = required<StakeholderId>(j, "target");
    s.offer_id = optional_field<std::string>(j, "offer_id");
    s.score = unit_field(j, "score");
    s.satisfaction = unit_field(j, "satisfaction");
    s.credibility = unit_field(j, "credibility");
    s.transaction_factor = unit_field(j, "transaction_factor");
    s.community_factor = unit_field(j, "community_factor");
    s.version = required<std::uint64_t>(j, "version");
    s.computed_at = required<Timestamp>(j, "computed_at");
    s.cold_start = j.contains("cold_start") ? required<bool>(j, "cold_start") : false;
    s.degraded = j.contains("degraded") ? required<bool>(j, "degraded") : false;
}

void to_json(json& j, EventKind k) { j = std::string(to_string(k)); }

void from_json(const json& j, EventKind& k) {
    if (!j.is_string()) {
        fail(ErrorCode::kInvalidValue, "event kind must be a string");
    }
    k = parse_event_kind(j.get<std::string>());
}

void to_json(json& j, const TrustEvent& e) {
    j = json{{"kind", e.kind},
             {"target", e.target},
             {"offer_id", e.offer_id ? json(*e.offer_id) : json(nullptr)},
             {"occurred_at", e.occurred_at},
             {"magnitude", e.magnitude}};
}

void from_json(const json& j, TrustEvent& e) {
    e.kind = required<EventKind>(j, "kind");
    e.target = required<StakeholderId>(j, "target");
    e.offer_id = optional_field<std::string>(j, "offer_id");
    e.occurred_at = required<Timestamp>(j, "occurred_at");
    e.magnitude = required<double>(j, "magnitude");
    validate_event(e);
}

void to_json(json& j, const PolicyRule& r) {
    j = json{{"event_kind", r.event_kind},
             {"delta_mode", std::string(to_string(r.delta_mode))},
             {"weight", r.weight}};
}

void from_json(const json& j, PolicyRule& r) {
    r.event_kind = required<EventKind>(j, "event_kind");
    r.delta_mode = parse_delta_mode(required<std::string>(j, "delta_mode"));
    r.weight = unit_field(j, "weight");
}

}  // namespace taas
