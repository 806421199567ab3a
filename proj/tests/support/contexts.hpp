// Copyright 2026 The TaaS Authors
// SPDX-License-Identifier: Apache-2.0

// Hand-rolled generators of trust contexts for the assessor.

#pragma once

#include <optional>
#include <random>
#include <string>

#include "support.hpp"
#include "taas/config.hpp"
#include "taas/gathering/gatherer.hpp"

namespace taas::test {

inline constexpr Timestamp kContextNow = 1'700'000'000;

inline Recommendation rec(const std::string& who, double rating, std::optional<OfferType> type = std::nullopt) {
    return {StakeholderId{who}, StakeholderId{"p"}, type, rating, kContextNow - 10};
}

inline gathering::TrustContext base_context(const ModelConfig& cfg) {
    gathering::TrustContext ctx;
    ctx.evaluator = StakeholderId{"u", "dom-u"};
    ctx.target = StakeholderId{"p", "dom-p"};
    ctx.offer = {"o", ctx.target, OfferType::kRan, "x", 5};
    ctx.now = kContextNow;
    for (std::size_t k = 0; k < cfg.window_weights.size(); ++k) {
        ctx.provider_stats.push_back(mixed_stats(static_cast<int>(k + 1)));
        ctx.offer_stats.push_back(mixed_stats(static_cast<int>(k + 1)));
    }
    ctx.feedback_counts.assign(cfg.window_weights.size(), 0);
    return ctx;
}

// Random but valid context: arbitrary stats, recommenders, histories and counts.
inline gathering::TrustContext random_context(std::mt19937_64& rng, const ModelConfig& cfg) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::uniform_int_distribution<int> small(0, 12);
    auto ctx = base_context(cfg);
    for (std::size_t k = 0; k < cfg.window_weights.size(); ++k) {
        ctx.provider_stats[k] = random_stats(rng, static_cast<int>(k + 1));
        ctx.offer_stats[k] = random_stats(rng, static_cast<int>(k + 1));
        ctx.feedback_counts[k] = small(rng) * 3;
    }
    ctx.provider_stats_missing = small(rng) == 0;
    ctx.offer_stats_missing = small(rng) == 0;
    const int n = small(rng);
    for (int i = 0; i < n; ++i) {
        const auto id = "r" + std::to_string(i);
        ctx.recommendations.push_back(rec(id, u(rng)));
        if (u(rng) < 0.6) ctx.offer_recommendations.push_back(rec(id, u(rng), OfferType::kRan));
        ctx.recommender_trust[id] = u(rng);
        RatingHistory h;
        for (int t = 0; t < 8; ++t) {
            if (u(rng) < 0.7) h.emplace_back("t" + std::to_string(t), u(rng));
        }
        if (u(rng) < 0.9) ctx.recommender_histories[id] = h;
    }
    for (int t = 0; t < 8; ++t) {
        if (u(rng) < 0.7) ctx.evaluator_history.emplace_back("t" + std::to_string(t), u(rng));
    }
    return ctx;
}

}  // namespace taas::test
