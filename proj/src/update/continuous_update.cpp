// Copyright 2026 The TaaS Authors
// SPDX-License-Identifier: Apache-2.0

#include "taas/update/continuous_update.hpp"

#include <algorithm>
#include <cmath>

namespace taas::update {

double apply_rule(double trust, const PolicyRule& rule, double magnitude) {
    const double step = rule.weight * magnitude;
    if (rule.delta_mode == DeltaMode::kPunish) {
        return clamp_unit(trust * (1.0 - step));
    }
    return clamp_unit(trust + (1.0 - trust) * step);
}

TrustScore apply_decay(const TrustScore& score, Timestamp now, const ModelConfig& cfg) {
    const double dt = static_cast<double>(std::max<Timestamp>(0, now - score.computed_at));
    const double prior = cfg.cold_start_prior;
    TrustScore out = score;
    out.score = clamp_unit(prior + (score.score - prior) * std::exp2(-dt / cfg.decay_half_life));
    out.version = score.version + 1;
    out.computed_at = std::max(now, score.computed_at);
    return out;
}

ContinuousUpdater::ContinuousUpdater(StakeholderId owner, PolicySet policies,
                                     const ModelConfig& cfg, storage::PrivateStore& store)
    : owner_(std::move(owner)),
      policies_(std::move(policies)),
      cfg_(validate_config(cfg)),
      store_(store) {}

UpdateOutcome ContinuousUpdater::persist(const TrustScore& previous, TrustScore updated,
                                         const TrustEvent& event, std::optional<PolicyRule> rule) {
    store_.put_trust_score(updated);
    UpdateOutcome outcome{previous, std::move(updated), rule, event, false};
    outcome.below_threshold = outcome.updated.score < cfg_.recommender_threshold;
    return outcome;
}

UpdateOutcome ContinuousUpdater::apply_event(const TrustEvent& event) {
    validate_event(event);
    const auto previous = store_.get_latest_score(owner_, event.target, event.offer_id);
    if (!previous) {
        fail(ErrorCode::kNoScore, "no trust relationship with '" + event.target.id + "'");
    }
    if (event.kind == EventKind::kDecayTick) {
        return persist(*previous, apply_decay(*previous, event.occurred_at, cfg_), event,
                       std::nullopt);
    }
    const auto rule = policies_.find(event.kind);
    if (!rule) {
        fail(ErrorCode::kNoRule, "no policy for " + std::string(to_string(event.kind)));
    }
    TrustScore updated = *previous;
    updated.score = apply_rule(previous->score, *rule, event.magnitude);
    updated.version = previous->version + 1;
    updated.computed_at = std::max(previous->computed_at, event.occurred_at);
    return persist(*previous, std::move(updated), event, rule);
}

UpdateOutcome ContinuousUpdater::decay(const StakeholderId& target,
                                       const std::optional<std::string>& offer_id, Timestamp now) {
    TrustEvent tick{EventKind::kDecayTick, target, offer_id, now, 0.0};
    return apply_event(tick);
}

std::vector<UpdateResult> ContinuousUpdater::evaluate_triggers(std::span<const TrustEvent> events) {
    std::vector<TrustEvent> ordered(events.begin(), events.end());
    std::stable_sort(ordered.begin(), ordered.end(), [](const TrustEvent& a, const TrustEvent& b) {
        return a.occurred_at < b.occurred_at;
    });
    std::vector<UpdateResult> results;
    results.reserve(ordered.size());
    for (auto& event : ordered) {
        UpdateResult r;
        r.event = event;
        try {
            r.outcome = apply_event(event);
        } catch (const TrustError& e) {
            r.error = e.code();
            r.message = e.what();
        }
        results.push_back(std::move(r));
    }
    return results;
}

EventProcessor::EventProcessor(ContinuousUpdater& updater)
    : updater_(updater), consumer_([this](std::stop_token stop) { drain(stop); }) {}

EventProcessor::~EventProcessor() {
    consumer_.request_stop();
    ready_.notify_all();
}

std::future<UpdateResult> EventProcessor::enqueue(TrustEvent event) {
    Job job{std::move(event), {}};
    auto fut = job.done.get_future();
    {
        std::lock_guard lock(mutex_);
        queue_.push_back(std::move(job));
    }
    ready_.notify_one();
    return fut;
}

void EventProcessor::drain(std::stop_token stop) {
    for (;;) {
        Job job;
        {
            std::unique_lock lock(mutex_);
            if (!ready_.wait(lock, stop, [this] { return !queue_.empty(); })) {
                break;
            }
            job = std::move(queue_.front());
            queue_.pop_front();
        }
        const auto results = updater_.evaluate_triggers(std::span(&job.event, 1));
        job.done.set_value(results.front());
    }
    // Anything still queued at shutdown is answered, not dropped silently.
    std::lock_guard lock(mutex_);
    for (auto& job : queue_) {
        job.done.set_value({job.event, std::nullopt, ErrorCode::kSourceUnavailable,
                            "event processor stopped"});
    }
    queue_.clear();
}

}  // namespace taas::update
