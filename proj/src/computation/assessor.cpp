// Copyright 2026 The TaaS Authors
// SPDX-License-Identifier: Apache-2.0

#include "taas/computation/assessor.hpp"

#include <chrono>

#include "taas/error.hpp"

namespace taas::computation {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_between(Clock::time_point a, Clock::time_point b) {
    return std::chrono::duration<double>(b - a).count();
}

}  // namespace

Assessment PeerTrustAssessor::assess(const gathering::TrustContext& ctx, const ModelConfig& cfg,
                                     Scope scope, PillarTimings* timings) const {
    Assessment out;
    const auto t0 = !timings ? Clock::time_point{} : timings->cursor ? *timings->cursor : Clock::now();

    const double ps = provider_satisfaction(ctx, cfg);
    const double po = scope == Scope::kOffer ? offer_satisfaction(ctx, cfg) : ps;
    out.satisfaction = satisfaction(ps, po, cfg);
    const auto t1 = timings ? Clock::now() : Clock::time_point{};

    double cr_sum = 0.0;
    for (const auto& rec : ctx.recommendations) {
        const auto it = ctx.recommender_histories.find(rec.recommender.id);
        const double cr =
            it == ctx.recommender_histories.end()
                ? cfg.cold_start_prior
                : psm_credibility(ctx.evaluator_history, it->second, cfg.cold_start_prior);
        out.credibilities[rec.recommender.id] = cr;
        cr_sum += cr;
    }
    const double credibility =
        ctx.recommendations.empty()
            ? cfg.cold_start_prior
            : clamp_unit(cr_sum / static_cast<double>(ctx.recommendations.size()));
    const auto t2 = timings ? Clock::now() : Clock::time_point{};

    const double tf = transaction_context_factor(ctx.feedback_counts, cfg);
    const auto t3 = timings ? Clock::now() : Clock::time_point{};

    const double cf = community_context_factor(ctx.recommendations, out.credibilities, cfg);

    TrustScore& s = out.score;
    s.evaluator = ctx.evaluator;
    s.target = ctx.target;
    const auto& prior = scope == Scope::kOffer ? ctx.prior_score : ctx.prior_provider_score;
    if (scope == Scope::kOffer) s.offer_id = ctx.offer.offer_id;
    s.satisfaction = out.satisfaction.combined;
    s.credibility = credibility;
    s.transaction_factor = tf;
    s.community_factor = cf;
    s.score = final_trust(out.satisfaction, credibility, tf, cf, cfg);
    s.version = prior ? prior->version + 1 : 1;
    s.computed_at = ctx.now;
    s.cold_start = ctx.cold_start;
    s.degraded = ctx.degraded;
    const auto t4 = timings ? Clock::now() : Clock::time_point{};

    if (timings) {
        timings->satisfaction += seconds_between(t0, t1);
        timings->credibility += seconds_between(t1, t2);
        timings->transaction_factor += seconds_between(t2, t3);
        timings->community_factor += seconds_between(t3, t4);
        if (timings->cursor) timings->cursor = t4;
    }
    return out;
}

std::unique_ptr<Assessor> make_assessor(std::string_view name) {
    if (name == "peertrust") {
        return std::make_unique<PeerTrustAssessor>();
    }
    fail(ErrorCode::kConfigInvalid, "unknown assessor '" + std::string(name) + "'");
}

}  // namespace taas::computation
