// Copyright 2026 The TaaS Authors
// SPDX-License-Identifier: Apache-2.0

#include "taas/computation/engine.hpp"

#include <chrono>
#include <map>
#include <thread>

#include "taas/json_io.hpp"

namespace taas::computation {

namespace {

using Clock = std::chrono::steady_clock;

constexpr int kStoreAttempts = 3;

}  // namespace

gathering::TrustContext cold_start_bootstrap(const StakeholderId& evaluator,
                                             const ProductOffer& offer,
                                             const gathering::Sources& sources,
                                             const ModelConfig& cfg,
                                             std::span<const gathering::RecommenderEntry> list,
                                             Timestamp now) {
    const gathering::Gatherer exhaustive(sources, cfg, gathering::ScanMode::kExhaustive);
    auto ctx = exhaustive.gather(evaluator, offer, list, now);
    ctx.cold_start = true;
    return ctx;
}

struct TrustEngine::Pending {
    std::string offer_id;
    std::optional<ProductOffer> offer;
    std::optional<gathering::TrustContext> ctx;
    std::optional<Assessment> assessment;
    std::optional<ErrorCode> error;
    std::string message;

    void set_error(ErrorCode code, std::string what) {
        error = code;
        message = std::move(what);
        ctx.reset();
        assessment.reset();
    }
};

TrustEngine::TrustEngine(const ModelConfig& cfg, const gathering::CatalogSource& catalog,
                         storage::FeedbackLog& datalake, storage::PrivateStore& store)
    : cfg_(validate_config(cfg)),
      catalog_(catalog),
      datalake_(datalake),
      store_(store),
      assessor_(make_assessor(cfg.assessor)) {}

gathering::Sources TrustEngine::sources() const noexcept {
    return {&catalog_, &datalake_, &store_};
}

std::vector<OfferResult> TrustEngine::score_offers(const StakeholderId& evaluator,
                                                   std::span<const std::string> offer_ids,
                                                   Timestamp now, PhaseTimings* timings) {
    const auto entered = Clock::now();
    std::vector<Pending> batch(offer_ids.size());
    for (std::size_t i = 0; i < offer_ids.size(); ++i) batch[i].offer_id = offer_ids[i];
    return run(evaluator, std::move(batch), now, timings, entered);
}

std::vector<OfferResult> TrustEngine::score_offers(const StakeholderId& evaluator,
                                                   std::span<const ProductOffer> offers,
                                                   Timestamp now, PhaseTimings* timings) {
    const auto entered = Clock::now();
    std::vector<Pending> batch(offers.size());
    for (std::size_t i = 0; i < offers.size(); ++i) {
        batch[i].offer_id = offers[i].offer_id;
        batch[i].offer = offers[i];
    }
    return run(evaluator, std::move(batch), now, timings, entered);
}

void TrustEngine::store_score(TrustScore& score) {
    for (int attempt = 1;; ++attempt) {
        try {
            store_.put_trust_score(score);
            return;
        } catch (const TrustError& e) {
            if (e.code() != ErrorCode::kVersionConflict || attempt == kStoreAttempts) throw;
            score.version = store_.latest_version(score.evaluator, score.target, score.offer_id) + 1;
        }
    }
}

std::vector<OfferResult> TrustEngine::run(const StakeholderId& evaluator,
                                          std::vector<Pending> batch, Timestamp now,
                                          PhaseTimings* timings, Clock::time_point entered) {
    const auto sources = this->sources();

    // Gathering. Phase boundaries share one clock reading so the phases
    // tile the whole call.
    auto phase_start = entered;
    auto next_phase = [&](double PhaseTimings::*slot) {
        const auto t = Clock::now();
        if (timings) timings->*slot += std::chrono::duration<double>(t - phase_start).count();
        phase_start = t;
    };
    {
    const auto list = recommenders_.snapshot();
    const gathering::Gatherer indexed(sources, cfg_);
    for (auto& p : batch) {
        try {
            if (!p.offer) {
                try {
                    p.offer = catalog_.find_offer(p.offer_id);
                } catch (const TrustError&) {
                    throw;
                } catch (const std::exception& e) {
                    fail(ErrorCode::kSourceUnavailable, std::string("catalog: ") + e.what());
                }
                if (!p.offer) {
                    fail(ErrorCode::kNotFound, "unknown offer '" + p.offer_id + "'");
                }
            }
            const bool has_history = store_.get_latest_score(evaluator, p.offer->provider).has_value();
            p.ctx = has_history ? indexed.gather(evaluator, *p.offer, list, now)
                                : cold_start_bootstrap(evaluator, *p.offer, sources, cfg_, list, now);
        } catch (const TrustError& e) {
            p.set_error(e.code(), e.what());
        }
    }
    }  // the gatherer's history cache is released inside the phase
    next_phase(&PhaseTimings::gathering);

    // Compute. The first context seen for each provider also yields the
    // provider-scope score.
    std::map<std::string, std::size_t> provider_first;
    for (std::size_t i = 0; i < batch.size(); ++i) {
        if (batch[i].ctx) provider_first.emplace(batch[i].ctx->target.id, i);
    }
    std::vector<std::size_t> provider_owner;
    provider_owner.reserve(provider_first.size());
    for (const auto& [_, i] : provider_first) provider_owner.push_back(i);
    std::vector<std::optional<Assessment>> provider_scores(provider_owner.size());

    const std::size_t jobs = batch.size() + provider_owner.size();
    auto compute_job = [&](std::size_t job, PillarTimings* pillars) {
        if (job < batch.size()) {
            auto& p = batch[job];
            if (!p.ctx) return;
            try {
                p.assessment = assessor_->assess(*p.ctx, cfg_, Scope::kOffer, pillars);
            } catch (const TrustError& e) {
                p.set_error(e.code(), e.what());
            }
        } else {
            const auto k = job - batch.size();
            const auto& p = batch[provider_owner[k]];
            if (!p.ctx) return;
            try {
                provider_scores[k] = assessor_->assess(*p.ctx, cfg_, Scope::kProvider, pillars);
            } catch (const TrustError&) {
                // The matching offer entry already carries the failure.
            }
        }
    };
    const std::size_t workers = std::min(cfg_.max_workers, std::max<std::size_t>(jobs, 1));
    if (workers <= 1) {
        if (timings) timings->pillars.cursor = phase_start;
        for (std::size_t job = 0; job < jobs; ++job) {
            compute_job(job, timings ? &timings->pillars : nullptr);
        }
    } else {
        std::vector<PillarTimings> local(workers);
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                local[w].cursor = Clock::now();
                for (std::size_t job = w; job < jobs; job += workers) {
                    compute_job(job, timings ? &local[w] : nullptr);
                }
            });
        }
        pool.clear();
        if (timings) {
            for (const auto& l : local) {
                timings->pillars.satisfaction += l.satisfaction;
                timings->pillars.credibility += l.credibility;
                timings->pillars.transaction_factor += l.transaction_factor;
                timings->pillars.community_factor += l.community_factor;
            }
        }
    }
    if (timings) timings->pillars.cursor.reset();
    next_phase(&PhaseTimings::compute);

    // Storage: private score history, a raw context record, and the
    // published satisfaction in the Data Lake.
    for (auto& p : batch) {
        if (!p.assessment) continue;
        auto& score = p.assessment->score;
        try {
            store_score(score);
            const auto& ctx = *p.ctx;
            nlohmann::json recommenders = nlohmann::json::array();
            for (const auto& r : ctx.recommendations) recommenders.push_back(r.recommender.id);
            store_.put_raw("context", evaluator.id + "/" + p.offer_id + "/" + std::to_string(score.version),
                           {{"provider_stats", ctx.provider_stats},
                            {"offer_stats", ctx.offer_stats},
                            {"feedback_counts", ctx.feedback_counts},
                            {"recommenders", recommenders},
                            {"credibilities", p.assessment->credibilities},
                            {"cold_start", ctx.cold_start},
                            {"degraded", ctx.degraded},
                            {"now", ctx.now}});
            DataLakeEntry published;
            published.reporter = evaluator;
            published.target = score.target;
            published.offer_type = ctx.offer.offer_type;
            published.rating = score.satisfaction;
            published.interaction_id = evaluator.id + ":" + p.offer_id + ":" + std::to_string(score.version);
            published.recorded_at = now;
            datalake_.append(std::move(published));
        } catch (const TrustError& e) {
            p.set_error(e.code(), e.what());
        }
    }
    for (auto& provider : provider_scores) {
        if (!provider) continue;
        try {
            store_score(provider->score);
            recommenders_.update(provider->score, cfg_);
        } catch (const TrustError&) {
            // Provider scope is derived state; offer results already stand.
        }
    }
    std::vector<OfferResult> results;
    results.reserve(batch.size());
    for (auto& p : batch) {
        OfferResult r;
        r.offer_id = std::move(p.offer_id);
        if (p.assessment) {
            r.score = std::move(p.assessment->score);
        } else {
            r.error = p.error.value_or(ErrorCode::kSourceUnavailable);
            r.message = std::move(p.message);
        }
        results.push_back(std::move(r));
    }
    // Contexts are released here so their teardown is charged to storage.
    std::vector<Pending>().swap(batch);
    std::vector<std::optional<Assessment>>().swap(provider_scores);
    next_phase(&PhaseTimings::storage);
    return results;
}

}  // namespace taas::computation
