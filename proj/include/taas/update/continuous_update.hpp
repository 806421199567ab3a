// Copyright 2026 The TaaS Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <condition_variable>
#include <deque>
#include <future>
#include <mutex>
#include <optional>
#include <span>
#include <thread>
#include <vector>

#include "taas/config.hpp"
#include "taas/error.hpp"
#include "taas/storage/private_store.hpp"
#include "taas/types.hpp"

namespace taas::update {

struct UpdateOutcome {
    TrustScore previous;
    TrustScore updated;
    // Empty for DECAY_TICK, which follows the decay law instead of a rule.
    std::optional<PolicyRule> applied_rule;
    TrustEvent event;
    // Advisory only: the updated score fell below the recommender threshold.
    // Terminating the relationship is left to the caller.
    bool below_threshold{false};
};

// One entry per event of a stream: either an outcome or the error that made
// the event a no-op.
struct UpdateResult {
    TrustEvent event;
    std::optional<UpdateOutcome> outcome;
    std::optional<ErrorCode> error;
    std::string message;
};

// Reward/punishment laws on a single score.
//   PUNISH: T' = T * (1 - weight * magnitude)
//   REWARD: T' = T + (1 - T) * weight * magnitude
double apply_rule(double trust, const PolicyRule& rule, double magnitude);

// Regression toward the cold-start prior:
//   T' = prior + (T - prior) * 2^(-dt / half_life)
// The returned score is the next version, computed at now.
TrustScore apply_decay(const TrustScore& score, Timestamp now, const ModelConfig& cfg);

// Event engine over the private store of one evaluator (the TaaS instance
// owner). Each event touches the owner's latest score for the event target,
// at offer scope when the event carries an offer id, provider scope otherwise.
class ContinuousUpdater {
  public:
    ContinuousUpdater(StakeholderId owner, PolicySet policies, const ModelConfig& cfg,
                      storage::PrivateStore& store);

    // Throws TrustError(kNoScore) without a prior score and
    // TrustError(kNoRule) for an unmapped kind.
    UpdateOutcome apply_event(const TrustEvent& event);

    // Decays and persists the latest score for target at now.
    UpdateOutcome decay(const StakeholderId& target, const std::optional<std::string>& offer_id,
                        Timestamp now);

    // Applies events in timestamp order (stable for equal stamps). Failing
    // events are reported and skipped.
    std::vector<UpdateResult> evaluate_triggers(std::span<const TrustEvent> events);

    [[nodiscard]] const StakeholderId& owner() const noexcept { return owner_; }

  private:
    UpdateOutcome persist(const TrustScore& previous, TrustScore updated, const TrustEvent& event,
                          std::optional<PolicyRule> rule);

    StakeholderId owner_;
    PolicySet policies_;
    ModelConfig cfg_;
    storage::PrivateStore& store_;
};

// Single-consumer event queue in front of a ContinuousUpdater. Producers
// may enqueue from any thread; events are applied in arrival order.
class EventProcessor {
  public:
    explicit EventProcessor(ContinuousUpdater& updater);
    ~EventProcessor();

    EventProcessor(const EventProcessor&) = delete;
    EventProcessor& operator=(const EventProcessor&) = delete;

    std::future<UpdateResult> enqueue(TrustEvent event);

  private:
    struct Job {
        TrustEvent event;
        std::promise<UpdateResult> done;
    };

    void drain(std::stop_token stop);

    ContinuousUpdater& updater_;
    std::mutex mutex_;
    std::condition_variable_any ready_;
    std::deque<Job> queue_;
    std::jthread consumer_;
};

}  // namespace taas::update
