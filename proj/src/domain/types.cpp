// Copyright 2026 The TaaS Authors
// SPDX-License-Identifier: Apache-2.0

#include "taas/types.hpp"

#include "taas/error.hpp"

namespace taas {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::kWeightSum: return "WEIGHT_SUM";
        case ErrorCode::kWindowWeights: return "WINDOW_WEIGHTS";
        case ErrorCode::kRange: return "RANGE";
        case ErrorCode::kCounts: return "COUNTS";
        case ErrorCode::kInvalidValue: return "INVALID_VALUE";
        case ErrorCode::kSourceUnavailable: return "SOURCE_UNAVAILABLE";
        case ErrorCode::kNoRecommenders: return "NO_RECOMMENDERS";
        case ErrorCode::kWindowMismatch: return "WINDOW_MISMATCH";
        case ErrorCode::kEmpty: return "EMPTY";
        case ErrorCode::kVersionConflict: return "VERSION_CONFLICT";
        case ErrorCode::kSensitiveField: return "SENSITIVE_FIELD";
        case ErrorCode::kNoScore: return "NO_SCORE";
        case ErrorCode::kNoRule: return "NO_RULE";
        case ErrorCode::kBindFailure: return "BIND_FAILURE";
        case ErrorCode::kMalformedPayload: return "MALFORMED_PAYLOAD";
        case ErrorCode::kNotFound: return "NOT_FOUND";
        case ErrorCode::kFileNotFound: return "FILE_NOT_FOUND";
        case ErrorCode::kConfigInvalid: return "CONFIG_INVALID";
        case ErrorCode::kEmptyCatalog: return "EMPTY_CATALOG";
        case ErrorCode::kIo: return "IO";
    }
    return "UNKNOWN";
}

StakeholderId make_stakeholder(std::string id, std::string domain) {
    if (id.empty()) {
        fail(ErrorCode::kInvalidValue, "stakeholder id must be non-empty");
    }
    return StakeholderId{std::move(id), std::move(domain)};
}

std::string_view to_string(OfferType type) noexcept {
    switch (type) {
        case OfferType::kRan: return "RAN";
        case OfferType::kSpectrum: return "SPECTRUM";
        case OfferType::kVnfCnf: return "VNF_CNF";
        case OfferType::kSlice: return "SLICE";
        case OfferType::kEdge: return "EDGE";
    }
    return "?";
}

OfferType parse_offer_type(std::string_view token) {
    for (auto type : kAllOfferTypes) {
        if (to_string(type) == token) {
            return type;
        }
    }
    fail(ErrorCode::kInvalidValue, "unknown offer type '" + std::string(token) + "'");
}

ProviderStats& ProviderStats::operator+=(const ProviderStats& other) noexcept {
    available_assets += other.available_assets;
    total_assets += other.total_assets;
    available_assets_location += other.available_assets_location;
    total_assets_location += other.total_assets_location;
    predicted_violations += other.predicted_violations;
    managed_violations += other.managed_violations;
    unmanaged_violations += other.unmanaged_violations;
    unpredicted_violations += other.unpredicted_violations;
    return *this;
}

const ProviderStats& validate_stats(const ProviderStats& s) {
    if (s.available_assets < 0 || s.total_assets < 0 || s.available_assets_location < 0 ||
        s.total_assets_location < 0 || s.predicted_violations < 0 || s.managed_violations < 0 ||
        s.unmanaged_violations < 0 || s.unpredicted_violations < 0) {
        fail(ErrorCode::kCounts, "negative counter");
    }
    if (s.available_assets > s.total_assets) {
        fail(ErrorCode::kCounts, "available assets exceed total assets");
    }
    if (s.available_assets_location > s.total_assets_location) {
        fail(ErrorCode::kCounts, "available location assets exceed total location assets");
    }
    if (s.managed_violations + s.unmanaged_violations > s.predicted_violations) {
        fail(ErrorCode::kCounts, "managed + unmanaged violations exceed predicted violations");
    }
    if (s.window_index < 1) {
        fail(ErrorCode::kCounts, "window index must be >= 1");
    }
    return s;
}

std::string_view to_string(EventKind kind) noexcept {
    switch (kind) {
        case EventKind::kSecurityThreat: return "SECURITY_THREAT";
        case EventKind::kPolicyChange: return "POLICY_CHANGE";
        case EventKind::kSlaViolation: return "SLA_VIOLATION";
        case EventKind::kExecutionFailure: return "EXECUTION_FAILURE";
        case EventKind::kSuccessfulInteraction: return "SUCCESSFUL_INTERACTION";
        case EventKind::kDecayTick: return "DECAY_TICK";
    }
    return "?";
}

EventKind parse_event_kind(std::string_view token) {
    for (auto kind : kAllEventKinds) {
        if (to_string(kind) == token) {
            return kind;
        }
    }
    fail(ErrorCode::kInvalidValue, "unknown event kind '" + std::string(token) + "'");
}

const TrustEvent& validate_event(const TrustEvent& event) {
    if (!in_unit(event.magnitude)) {
        fail(ErrorCode::kRange, "event magnitude outside [0,1]");
    }
    if (event.occurred_at <= 0) {
        fail(ErrorCode::kRange, "event timestamp must be positive");
    }
    if (event.target.id.empty()) {
        fail(ErrorCode::kInvalidValue, "event target must be non-empty");
    }
    return event;
}

std::string_view to_string(DeltaMode mode) noexcept {
    return mode == DeltaMode::kReward ? "REWARD" : "PUNISH";
}

DeltaMode parse_delta_mode(std::string_view token) {
    if (token == "REWARD") return DeltaMode::kReward;
    if (token == "PUNISH") return DeltaMode::kPunish;
    fail(ErrorCode::kInvalidValue, "unknown delta mode '" + std::string(token) + "'");
}

}  // namespace taas
