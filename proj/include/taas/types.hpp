// Copyright 2026 The TaaS Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace taas {

// Integer seconds, UTC.
using Timestamp = std::int64_t;

// A marketplace participant. The domain label exists for zero-trust tests
// and bookkeeping; no scoring path reads it, and equality ignores it.
struct StakeholderId {
    std::string id;
    std::string domain;

    StakeholderId() = default;
    StakeholderId(std::string id_, std::string domain_ = {})
        : id(std::move(id_)), domain(std::move(domain_)) {}

    friend bool operator==(const StakeholderId& a, const StakeholderId& b) noexcept {
        return a.id == b.id;
    }
    friend bool operator<(const StakeholderId& a, const StakeholderId& b) noexcept {
        return a.id < b.id;
    }
};

StakeholderId make_stakeholder(std::string id, std::string domain = {});

enum class OfferType { kRan, kSpectrum, kVnfCnf, kSlice, kEdge };

inline constexpr std::array<OfferType, 5> kAllOfferTypes = {
    OfferType::kRan, OfferType::kSpectrum, OfferType::kVnfCnf, OfferType::kSlice, OfferType::kEdge};

std::string_view to_string(OfferType type) noexcept;
// Throws TrustError(kInvalidValue) for anything outside the five tokens.
OfferType parse_offer_type(std::string_view token);

struct ProductOffer {
    std::string offer_id;
    StakeholderId provider;
    OfferType offer_type{OfferType::kRan};
    std::string location;
    Timestamp created_at{0};

    bool operator==(const ProductOffer&) const = default;
};

// Asset and SLA counters for one provider over one time window.
// window_index 1 is the newest window.
struct ProviderStats {
    std::int64_t available_assets{0};           // AA
    std::int64_t total_assets{0};               // IA
    std::int64_t available_assets_location{0};  // AAL
    std::int64_t total_assets_location{0};      // IAL
    std::int64_t predicted_violations{0};       // PV
    std::int64_t managed_violations{0};         // MV
    std::int64_t unmanaged_violations{0};       // EV
    std::int64_t unpredicted_violations{0};     // NPV
    int window_index{1};

    bool operator==(const ProviderStats&) const = default;

    ProviderStats& operator+=(const ProviderStats& other) noexcept;
};

// Throws TrustError(kCounts) when any counter is negative or an
// available/managed count exceeds its total.
const ProviderStats& validate_stats(const ProviderStats& stats);

struct TimeWindowWeights {
    std::vector<double> weights;

    [[nodiscard]] std::size_t size() const noexcept { return weights.size(); }
    bool operator==(const TimeWindowWeights&) const = default;
};

struct Recommendation {
    StakeholderId recommender;
    StakeholderId target;
    std::optional<OfferType> offer_type;  // absent = provider-level
    double rating{0.0};
    Timestamp issued_at{0};

    bool operator==(const Recommendation&) const = default;
};

struct TrustScore {
    StakeholderId evaluator;
    StakeholderId target;
    std::optional<std::string> offer_id;
    double score{0.0};
    double satisfaction{0.0};
    double credibility{0.0};
    double transaction_factor{0.0};
    double community_factor{0.0};
    std::uint64_t version{0};
    Timestamp computed_at{0};
    bool cold_start{false};
    bool degraded{false};

    bool operator==(const TrustScore&) const = default;
};

enum class EventKind {
    kSecurityThreat,
    kPolicyChange,
    kSlaViolation,
    kExecutionFailure,
    kSuccessfulInteraction,
    kDecayTick,
};

inline constexpr std::array<EventKind, 6> kAllEventKinds = {
    EventKind::kSecurityThreat,    EventKind::kPolicyChange,          EventKind::kSlaViolation,
    EventKind::kExecutionFailure,  EventKind::kSuccessfulInteraction, EventKind::kDecayTick};

std::string_view to_string(EventKind kind) noexcept;
EventKind parse_event_kind(std::string_view token);

struct TrustEvent {
    EventKind kind{EventKind::kDecayTick};
    StakeholderId target;
    std::optional<std::string> offer_id;
    Timestamp occurred_at{0};
    double magnitude{0.0};

    bool operator==(const TrustEvent&) const = default;
};

// Throws TrustError(kRange) for magnitude outside [0,1] or a non-positive
// timestamp.
const TrustEvent& validate_event(const TrustEvent& event);

enum class DeltaMode { kReward, kPunish };

std::string_view to_string(DeltaMode mode) noexcept;
DeltaMode parse_delta_mode(std::string_view token);

struct PolicyRule {
    EventKind event_kind{EventKind::kSlaViolation};
    DeltaMode delta_mode{DeltaMode::kPunish};
    double weight{0.0};

    bool operator==(const PolicyRule&) const = default;
};

// Per-target average ratings, sorted by target id. Input to the similarity
// based credibility measure.
using RatingHistory = std::vector<std::pair<std::string, double>>;

// A shared, non-sensitive feedback record. Stakeholders are carried by id
// only; domain labels never reach the shared log.
struct DataLakeEntry {
    StakeholderId reporter;
    StakeholderId target;
    std::optional<OfferType> offer_type;
    double rating{0.0};
    std::string interaction_id;
    Timestamp recorded_at{0};
    std::uint64_t sequence{0};

    bool operator==(const DataLakeEntry&) const = default;
};

inline double clamp_unit(double value) noexcept {
    return value < 0.0 ? 0.0 : (value > 1.0 ? 1.0 : value);
}

inline bool in_unit(double value) noexcept { return value >= 0.0 && value <= 1.0; }

}  // namespace taas
