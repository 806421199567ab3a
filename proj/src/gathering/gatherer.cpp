// Copyright 2026 The TaaS Authors
// SPDX-License-Identifier: Apache-2.0

#include "taas/gathering/gatherer.hpp"

#include <algorithm>
#include <set>

#include "taas/error.hpp"

namespace taas::gathering {

namespace {

struct Mean {
    double sum{0.0};
    std::size_t n{0};
    Timestamp latest{0};

    void add(double v, Timestamp at) {
        sum += v;
        ++n;
        latest = std::max(latest, at);
    }
    [[nodiscard]] double value() const { return n == 0 ? 0.0 : sum / static_cast<double>(n); }
};

RatingHistory history_of(const std::vector<DataLakeEntry>& entries) {
    std::map<std::string, Mean> per_target;
    for (const auto& e : entries) per_target[e.target.id].add(e.rating, e.recorded_at);
    RatingHistory out;
    out.reserve(per_target.size());
    for (const auto& [target, m] : per_target) out.emplace_back(target, m.value());
    return out;
}

bool is_source_failure(const TrustError& e) {
    return e.code() == ErrorCode::kSourceUnavailable || e.code() == ErrorCode::kIo;
}

}  // namespace

Gatherer::Gatherer(Sources sources, const ModelConfig& cfg, ScanMode mode)
    : sources_(sources),
      cfg_(cfg),
      mode_(mode),
      cache_(mode == ScanMode::kIndexed ? std::make_shared<HistoryCache>() : nullptr) {}

RatingHistory Gatherer::history_from(const StakeholderId& reporter) const {
    if (!cache_) return history_of(entries_from(reporter));
    {
        std::lock_guard lock(cache_->mutex);
        if (auto it = cache_->by_reporter.find(reporter.id); it != cache_->by_reporter.end()) {
            return it->second;
        }
    }
    auto history = history_of(entries_from(reporter));
    std::lock_guard lock(cache_->mutex);
    return cache_->by_reporter.emplace(reporter.id, std::move(history)).first->second;
}

std::vector<DataLakeEntry> Gatherer::entries_about(const StakeholderId& target) const {
    if (mode_ == ScanMode::kIndexed) {
        return sources_.datalake->query(target);
    }
    std::vector<DataLakeEntry> out;
    sources_.datalake->scan([&](const DataLakeEntry& e) {
        if (e.target == target) out.push_back(e);
    });
    return out;
}

std::vector<DataLakeEntry> Gatherer::entries_from(const StakeholderId& reporter) const {
    if (mode_ == ScanMode::kIndexed) {
        return sources_.datalake->by_reporter(reporter);
    }
    std::vector<DataLakeEntry> out;
    sources_.datalake->scan([&](const DataLakeEntry& e) {
        if (e.reporter == reporter) out.push_back(e);
    });
    return out;
}

std::vector<ProviderStats> Gatherer::windowed(const std::vector<ProviderStats>& raw) const {
    const int n = static_cast<int>(cfg_.window_weights.size());
    std::vector<ProviderStats> out(static_cast<std::size_t>(n));
    for (int k = 1; k <= n; ++k) out[static_cast<std::size_t>(k - 1)].window_index = k;
    for (const auto& s : raw) {
        if (s.window_index >= 1 && s.window_index <= n) {
            out[static_cast<std::size_t>(s.window_index - 1)] = s;
        }
    }
    return out;
}

TrustContext Gatherer::collect_direct(const StakeholderId& evaluator, const ProductOffer& offer,
                                      Timestamp now) const {
    if (sources_.catalog == nullptr) {
        fail(ErrorCode::kSourceUnavailable, "no catalog configured");
    }
    TrustContext ctx;
    ctx.evaluator = evaluator;
    ctx.target = offer.provider;
    ctx.offer = offer;
    ctx.now = now;

    const auto n = cfg_.window_weights.size();
    ctx.provider_stats = windowed({});
    bool any_provider_data = false;
    try {
        if (mode_ == ScanMode::kExhaustive) {
            // Re-resolve the offer from the full listing rather than the index.
            const auto listing = sources_.catalog->offers();
            const bool listed = std::any_of(listing.begin(), listing.end(), [&](const auto& o) {
                return o.offer_id == offer.offer_id;
            });
            if (!listed) {
                fail(ErrorCode::kSourceUnavailable, "offer '" + offer.offer_id + "' not listed");
            }
        }
        for (auto type : kAllOfferTypes) {
            const auto raw = sources_.catalog->asset_stats(offer.provider, type);
            any_provider_data = any_provider_data || !raw.empty();
            const auto per_window = windowed(raw);
            for (std::size_t k = 0; k < n; ++k) ctx.provider_stats[k] += per_window[k];
            if (type == offer.offer_type) {
                ctx.offer_stats = per_window;
                ctx.offer_stats_missing = raw.empty();
            }
        }
    } catch (const TrustError& e) {
        if (e.code() == ErrorCode::kSourceUnavailable) throw;
        fail(ErrorCode::kSourceUnavailable, std::string("catalog: ") + e.what());
    } catch (const std::exception& e) {
        fail(ErrorCode::kSourceUnavailable, std::string("catalog: ") + e.what());
    }
    ctx.provider_stats_missing = !any_provider_data;

    if (sources_.store != nullptr) {
        ctx.prior_score = sources_.store->get_latest_score(evaluator, ctx.target, offer.offer_id);
        ctx.prior_provider_score = sources_.store->get_latest_score(evaluator, ctx.target);
    }

    ctx.feedback_counts.assign(n, 0);
    if (sources_.datalake == nullptr) {
        ctx.degraded = true;
        ctx.unavailable_sources.push_back("datalake");
        return ctx;
    }
    try {
        const auto window = cfg_.window_seconds;
        for (const auto& e : entries_about(ctx.target)) {
            const Timestamp age = now - e.recorded_at;
            const auto k = age <= 0 ? std::size_t{1}
                                    : static_cast<std::size_t>((age + window - 1) / window);
            if (k <= n) ++ctx.feedback_counts[k - 1];
        }
    } catch (const TrustError& e) {
        if (!is_source_failure(e)) throw;
        ctx.feedback_counts.assign(n, 0);
        ctx.degraded = true;
        ctx.unavailable_sources.push_back("datalake");
    }
    return ctx;
}

RecommendationSet Gatherer::collect_recommendations(const StakeholderId& evaluator,
                                                    const StakeholderId& target,
                                                    std::optional<OfferType> offer_type,
                                                    std::span<const RecommenderEntry> list) const {
    if (sources_.datalake == nullptr) {
        fail(ErrorCode::kSourceUnavailable, "no data lake configured");
    }
    RecommendationSet out;

    // Per-reporter aggregates of what has been said about target, in
    // sequence order so indexed and exhaustive paths sum identically.
    std::map<std::string, Mean> provider_level;
    std::map<std::string, Mean> typed;
    std::map<std::string, StakeholderId> reporters;
    for (const auto& e : entries_about(target)) {
        if (e.reporter == evaluator || e.reporter == target) continue;
        provider_level[e.reporter.id].add(e.rating, e.recorded_at);
        if (offer_type && e.offer_type == offer_type) {
            typed[e.reporter.id].add(e.rating, e.recorded_at);
        }
        reporters.emplace(e.reporter.id, e.reporter);
    }

    std::vector<StakeholderId> chosen;
    std::set<std::string> seen;
    for (const auto& entry : list) {
        if (chosen.size() >= cfg_.recommender_list_size) break;
        const auto& id = entry.recommender.id;
        if (provider_level.contains(id) && seen.insert(id).second) {
            chosen.push_back(entry.recommender);
            out.recommender_trust[id] = entry.last_trust;
        }
    }
    if (chosen.empty()) {
        // Newcomer path: any reporter with at least one entry on target.
        for (const auto& [id, who] : reporters) {
            if (chosen.size() >= cfg_.recommender_list_size) break;
            chosen.push_back(who);
            std::optional<TrustScore> prior;
            if (sources_.store != nullptr) prior = sources_.store->get_latest_score(evaluator, who);
            out.recommender_trust[id] = prior ? prior->score : cfg_.cold_start_prior;
        }
    }
    if (chosen.empty()) {
        fail(ErrorCode::kNoRecommenders, "no recommender has rated '" + target.id + "'");
    }

    for (const auto& who : chosen) {
        const auto& m = provider_level.at(who.id);
        out.recommendations.push_back({who, target, std::nullopt, m.value(), m.latest});
        if (const auto t = typed.find(who.id); t != typed.end()) {
            out.offer_recommendations.push_back(
                {who, target, offer_type, t->second.value(), t->second.latest});
        }
        out.recommender_histories[who.id] = history_from(who);
    }
    out.evaluator_history = history_from(evaluator);
    return out;
}

TrustContext Gatherer::gather(const StakeholderId& evaluator, const ProductOffer& offer,
                              std::span<const RecommenderEntry> list, Timestamp now) const {
    auto ctx = collect_direct(evaluator, offer, now);
    if (sources_.datalake == nullptr) {
        return ctx;
    }
    try {
        auto recs = collect_recommendations(evaluator, ctx.target, offer.offer_type, list);
        ctx.recommendations = std::move(recs.recommendations);
        ctx.offer_recommendations = std::move(recs.offer_recommendations);
        ctx.recommender_trust = std::move(recs.recommender_trust);
        ctx.recommender_histories = std::move(recs.recommender_histories);
        ctx.evaluator_history = std::move(recs.evaluator_history);
    } catch (const TrustError& e) {
        if (e.code() == ErrorCode::kNoRecommenders) {
            // Still need the evaluator's own history for later scoring.
            ctx.evaluator_history = history_from(evaluator);
        } else if (is_source_failure(e)) {
            if (!ctx.degraded) {
                ctx.degraded = true;
                ctx.unavailable_sources.push_back("datalake");
            }
        } else {
            throw;
        }
    }
    return ctx;
}

}  // namespace taas::gathering
