// Copyright 2026 The TaaS Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "taas/config.hpp"
#include "taas/gathering/gatherer.hpp"
#include "taas/types.hpp"

// The adapted PeerTrust pillars. Every function is pure and every result
// lies in [0,1] for valid inputs.
namespace taas::computation {

// Windowed provider reputation:
//   Rep = sum_k eps(k) * ((AA/IA + AAL/IAL + 2 MV/PV - 2 (EV+NPV)/PV) + 2) / 6
// with x/0 := 0 for the three positive ratios and the negative ratio capped
// at 1. Throws TrustError(kWindowMismatch) when the list lengths differ.
double provider_reputation(std::span<const ProviderStats> stats_per_window,
                           const TimeWindowWeights& eps);

// One recommendation paired with the evaluator's previous trust in its author.
struct WeightedRating {
    double rating{0.0};
    double recommender_trust{0.0};
};

// Arithmetic mean of rating * trust. Throws TrustError(kEmpty) on an empty list.
double aggregate_recommendations(std::span<const WeightedRating> recs);

// PS = Rep(provider stats) * aggregate(provider-level recs); PS = Rep when no
// recommendation exists. Rep falls back to the cold-start prior when the
// catalog holds nothing for the provider.
double provider_satisfaction(const gathering::TrustContext& ctx, const ModelConfig& cfg);
// Same construction over the offer-type stats and recommendations.
double offer_satisfaction(const gathering::TrustContext& ctx, const ModelConfig& cfg);

struct SatisfactionBreakdown {
    double provider_satisfaction{0.0};
    double offer_satisfaction{0.0};
    double combined{0.0};

    bool operator==(const SatisfactionBreakdown&) const = default;
};

SatisfactionBreakdown satisfaction(double ps, double po, const ModelConfig& cfg);

// Personalized similarity: 1 - RMS rating distance over the commonly rated
// targets. Both histories must be sorted by target id. Returns empty_value
// when nothing is rated in common.
double psm_credibility(std::span<const std::pair<std::string, double>> evaluator_history,
                       std::span<const std::pair<std::string, double>> recommender_history,
                       double empty_value);

// TF = floor + (1 - floor) * sum_k eps(k) * min(1, count_k / reference).
// Throws TrustError(kWindowMismatch) when counts and weights differ in length.
double transaction_context_factor(std::span<const std::int64_t> feedback_counts,
                                  const ModelConfig& cfg);

// Credibility-weighted mean rating scaled by min(1, |recs| / list size).
// No recommendations, or zero total credibility, gives the cold-start prior.
double community_context_factor(std::span<const Recommendation> recs,
                                const std::map<std::string, double>& credibilities,
                                const ModelConfig& cfg);

// T = alpha * S * Cr * TF + beta * CF, clamped to [0,1].
double final_trust(const SatisfactionBreakdown& sat, double cr, double tf, double cf,
                   const ModelConfig& cfg);

}  // namespace taas::computation
