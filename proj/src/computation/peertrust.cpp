// Copyright 2026 The TaaS Authors
// SPDX-License-Identifier: Apache-2.0

#include "taas/computation/peertrust.hpp"

#include <algorithm>
#include <cmath>

#include "taas/error.hpp"

namespace taas::computation {

namespace {

double ratio_or_zero(std::int64_t num, std::int64_t den) {
    return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

double window_reputation(const ProviderStats& s) {
    const double availability = ratio_or_zero(s.available_assets, s.total_assets);
    const double location = ratio_or_zero(s.available_assets_location, s.total_assets_location);
    const double managed = ratio_or_zero(s.managed_violations, s.predicted_violations);
    const double failed =
        std::min(1.0, static_cast<double>(s.unmanaged_violations + s.unpredicted_violations) /
                          static_cast<double>(std::max<std::int64_t>(s.predicted_violations, 1)));
    return ((availability + location + 2.0 * managed - 2.0 * failed) + 2.0) / 6.0;
}

double scoped_satisfaction(const std::vector<ProviderStats>& stats, bool stats_missing,
                           const std::vector<Recommendation>& recs,
                           const std::map<std::string, double>& recommender_trust,
                           const ModelConfig& cfg) {
    const double rep =
        stats_missing ? cfg.cold_start_prior : provider_reputation(stats, cfg.window_weights);
    if (recs.empty()) {
        return rep;
    }
    std::vector<WeightedRating> weighted;
    weighted.reserve(recs.size());
    for (const auto& r : recs) {
        const auto it = recommender_trust.find(r.recommender.id);
        weighted.push_back({r.rating, it == recommender_trust.end() ? cfg.cold_start_prior : it->second});
    }
    return clamp_unit(rep * aggregate_recommendations(weighted));
}

}  // namespace

double provider_reputation(std::span<const ProviderStats> stats_per_window,
                           const TimeWindowWeights& eps) {
    if (stats_per_window.size() != eps.size()) {
        fail(ErrorCode::kWindowMismatch, "got " + std::to_string(stats_per_window.size()) +
                                             " stats windows for " + std::to_string(eps.size()) +
                                             " weights");
    }
    // Dividing by the weight sum (1 up to rounding) keeps the all-perfect and
    // all-worst anchors exact.
    double rep = 0.0;
    double weight = 0.0;
    for (std::size_t k = 0; k < eps.size(); ++k) {
        rep += eps.weights[k] * window_reputation(stats_per_window[k]);
        weight += eps.weights[k];
    }
    return clamp_unit(rep / weight);
}

double aggregate_recommendations(std::span<const WeightedRating> recs) {
    if (recs.empty()) {
        fail(ErrorCode::kEmpty, "no recommendations to aggregate");
    }
    double sum = 0.0;
    for (const auto& r : recs) sum += r.rating * r.recommender_trust;
    return clamp_unit(sum / static_cast<double>(recs.size()));
}

double provider_satisfaction(const gathering::TrustContext& ctx, const ModelConfig& cfg) {
    return scoped_satisfaction(ctx.provider_stats, ctx.provider_stats_missing, ctx.recommendations,
                               ctx.recommender_trust, cfg);
}

double offer_satisfaction(const gathering::TrustContext& ctx, const ModelConfig& cfg) {
    return scoped_satisfaction(ctx.offer_stats, ctx.offer_stats_missing,
                               ctx.offer_recommendations, ctx.recommender_trust, cfg);
}

SatisfactionBreakdown satisfaction(double ps, double po, const ModelConfig& cfg) {
    return {ps, po, clamp_unit(cfg.psi * ps + cfg.phi * po)};
}

double psm_credibility(std::span<const std::pair<std::string, double>> evaluator_history,
                       std::span<const std::pair<std::string, double>> recommender_history,
                       double empty_value) {
    double squared = 0.0;
    std::size_t common = 0;
    auto a = evaluator_history.begin();
    auto b = recommender_history.begin();
    while (a != evaluator_history.end() && b != recommender_history.end()) {
        const int cmp = a->first.compare(b->first);
        if (cmp < 0) {
            ++a;
        } else if (cmp > 0) {
            ++b;
        } else {
            const double d = a->second - b->second;
            squared += d * d;
            ++common;
            ++a;
            ++b;
        }
    }
    if (common == 0) {
        return empty_value;
    }
    return clamp_unit(1.0 - std::sqrt(squared / static_cast<double>(common)));
}

double transaction_context_factor(std::span<const std::int64_t> feedback_counts,
                                  const ModelConfig& cfg) {
    const auto& eps = cfg.window_weights;
    if (feedback_counts.size() != eps.size()) {
        fail(ErrorCode::kWindowMismatch, "feedback counts do not match window weights");
    }
    const double reference = static_cast<double>(cfg.tf_reference_count);
    double published = 0.0;
    double weight = 0.0;
    for (std::size_t k = 0; k < eps.size(); ++k) {
        const double count = static_cast<double>(std::max<std::int64_t>(feedback_counts[k], 0));
        published += eps.weights[k] * std::min(1.0, count / reference);
        weight += eps.weights[k];
    }
    return std::clamp(cfg.tf_floor + (1.0 - cfg.tf_floor) * (published / weight), cfg.tf_floor, 1.0);
}

double community_context_factor(std::span<const Recommendation> recs,
                                const std::map<std::string, double>& credibilities,
                                const ModelConfig& cfg) {
    if (recs.empty()) {
        return cfg.cold_start_prior;
    }
    double weighted = 0.0;
    double total = 0.0;
    for (const auto& r : recs) {
        const auto it = credibilities.find(r.recommender.id);
        if (it == credibilities.end()) {
            fail(ErrorCode::kInvalidValue, "no credibility for recommender '" + r.recommender.id + "'");
        }
        weighted += r.rating * it->second;
        total += it->second;
    }
    if (total <= 0.0) {
        return cfg.cold_start_prior;
    }
    const double participation =
        std::min(1.0, static_cast<double>(recs.size()) /
                          static_cast<double>(cfg.recommender_list_size));
    return clamp_unit(weighted / total * participation);
}

double final_trust(const SatisfactionBreakdown& sat, double cr, double tf, double cf,
                   const ModelConfig& cfg) {
    return clamp_unit(cfg.alpha * sat.combined * cr * tf + cfg.beta * cf);
}

}  // namespace taas::computation
