// Copyright 2026 The TaaS Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <mutex>
#include <vector>

#include "taas/config.hpp"
#include "taas/types.hpp"

namespace taas::gathering {

struct RecommenderEntry {
    StakeholderId recommender;
    double last_trust{0.0};
    Timestamp updated_at{0};

    bool operator==(const RecommenderEntry&) const = default;
};

// last_trust * 2^(-age/half_life); age is clamped at zero.
double time_weighted_trust(const RecommenderEntry& entry, Timestamp now, double half_life);

// Upserts new_score.target with last_trust = new_score.score, evicts entries
// whose time-weighted trust falls below the threshold, then keeps the
// recommender_list_size best. Result is sorted by time-weighted trust
// descending, ties by id ascending.
std::vector<RecommenderEntry> update_recommender_list(std::vector<RecommenderEntry> list,
                                                      const TrustScore& new_score,
                                                      const ModelConfig& cfg);

// The evaluator's dynamic list of trustworthy recommenders. Updates are
// serialized; the last writer for a target wins.
class RecommenderList {
  public:
    RecommenderList() = default;
    explicit RecommenderList(std::vector<RecommenderEntry> initial)
        : entries_(std::move(initial)) {}

    void update(const TrustScore& new_score, const ModelConfig& cfg);
    [[nodiscard]] std::vector<RecommenderEntry> snapshot() const;

  private:
    mutable std::mutex mutex_;
    std::vector<RecommenderEntry> entries_;
};

}  // namespace taas::gathering
