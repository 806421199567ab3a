// Copyright 2026 The TaaS Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "taas/config.hpp"
#include "taas/gathering/catalog.hpp"
#include "taas/gathering/recommenders.hpp"
#include "taas/storage/data_lake.hpp"
#include "taas/storage/private_store.hpp"
#include "taas/types.hpp"

namespace taas::gathering {

// Everything the assessor needs about one (evaluator, target, offer) triple.
struct TrustContext {
    StakeholderId evaluator;
    StakeholderId target;
    ProductOffer offer;
    Timestamp now{0};

    // One entry per configured window, window_index 1..n. Windows without
    // data are zero-filled; the *_missing flags are set when the catalog has
    // nothing at all for the scope.
    std::vector<ProviderStats> provider_stats;
    std::vector<ProviderStats> offer_stats;
    bool provider_stats_missing{false};
    bool offer_stats_missing{false};

    // Provider-level recommendations (one per recommender) and the subset
    // scoped to the offer's type.
    std::vector<Recommendation> recommendations;
    std::vector<Recommendation> offer_recommendations;
    // Evaluator's previous trust in each recommender, T^(t-1)(u, x).
    std::map<std::string, double> recommender_trust;
    std::map<std::string, RatingHistory> recommender_histories;
    RatingHistory evaluator_history;

    std::optional<TrustScore> prior_score;           // offer scope
    std::optional<TrustScore> prior_provider_score;  // provider scope
    std::vector<std::int64_t> feedback_counts;       // Data Lake entries on target per window

    bool cold_start{false};
    bool degraded{false};
    std::vector<std::string> unavailable_sources;

    bool operator==(const TrustContext&) const = default;
};

// Result of recommendation collection, merged into a TrustContext.
struct RecommendationSet {
    std::vector<Recommendation> recommendations;
    std::vector<Recommendation> offer_recommendations;
    std::map<std::string, double> recommender_trust;
    std::map<std::string, RatingHistory> recommender_histories;
    RatingHistory evaluator_history;
};

// Read-only handles. catalog is mandatory; a null store means no priors.
struct Sources {
    const CatalogSource* catalog{nullptr};
    const storage::FeedbackSource* datalake{nullptr};
    const storage::PrivateStore* store{nullptr};
};

// kIndexed uses the Data Lake indexes; kExhaustive walks the full log for
// every lookup (the cold-start bootstrap path). Both produce the same
// context for the same data.
enum class ScanMode { kIndexed, kExhaustive };

class Gatherer {
  public:
    // Indexed gatherers memoise per-reporter rating histories, so one
    // instance must not outlive a batch during which the Data Lake is frozen.
    Gatherer(Sources sources, const ModelConfig& cfg, ScanMode mode = ScanMode::kIndexed);

    // Direct trust: windowed provider/offer stats, prior scores and feedback
    // counts. Throws TrustError(kSourceUnavailable) if the catalog fails; a
    // failing Data Lake only marks the context degraded.
    [[nodiscard]] TrustContext collect_direct(const StakeholderId& evaluator,
                                              const ProductOffer& offer, Timestamp now) const;

    // Indirect trust about target from the recommender list, falling back to
    // Data Lake discovery when no listed recommender has rated the target.
    // Throws TrustError(kNoRecommenders) when nobody has, and
    // TrustError(kSourceUnavailable) when the Data Lake fails.
    [[nodiscard]] RecommendationSet collect_recommendations(
        const StakeholderId& evaluator, const StakeholderId& target,
        std::optional<OfferType> offer_type, std::span<const RecommenderEntry> list) const;

    // collect_direct followed by collect_recommendations. A missing
    // recommender population leaves the recommendation fields empty.
    [[nodiscard]] TrustContext gather(const StakeholderId& evaluator, const ProductOffer& offer,
                                      std::span<const RecommenderEntry> list, Timestamp now) const;

  private:
    std::vector<DataLakeEntry> entries_about(const StakeholderId& target) const;
    std::vector<DataLakeEntry> entries_from(const StakeholderId& reporter) const;
    std::vector<ProviderStats> windowed(const std::vector<ProviderStats>& raw) const;
    RatingHistory history_from(const StakeholderId& reporter) const;

    struct HistoryCache {
        std::mutex mutex;
        std::map<std::string, RatingHistory> by_reporter;
    };

    Sources sources_;
    ModelConfig cfg_;
    ScanMode mode_;
    std::shared_ptr<HistoryCache> cache_;
};

}  // namespace taas::gathering
