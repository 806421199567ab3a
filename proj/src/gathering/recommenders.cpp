// Copyright 2026 The TaaS Authors
// SPDX-License-Identifier: Apache-2.0

#include "taas/gathering/recommenders.hpp"

#include <algorithm>
#include <cmath>

namespace taas::gathering {

double time_weighted_trust(const RecommenderEntry& entry, Timestamp now, double half_life) {
    const double age = static_cast<double>(std::max<Timestamp>(0, now - entry.updated_at));
    return entry.last_trust * std::exp2(-age / half_life);
}

std::vector<RecommenderEntry> update_recommender_list(std::vector<RecommenderEntry> list,
                                                      const TrustScore& new_score,
                                                      const ModelConfig& cfg) {
    const auto existing = std::find_if(list.begin(), list.end(), [&](const auto& e) {
        return e.recommender == new_score.target;
    });
    if (existing != list.end()) {
        existing->last_trust = new_score.score;
        existing->updated_at = new_score.computed_at;
    } else {
        list.push_back({new_score.target, new_score.score, new_score.computed_at});
    }

    const Timestamp now = new_score.computed_at;
    struct Ranked {
        double weighted;
        RecommenderEntry entry;
    };
    std::vector<Ranked> ranked;
    ranked.reserve(list.size());
    for (auto& e : list) {
        const double w = time_weighted_trust(e, now, cfg.decay_half_life);
        if (w >= cfg.recommender_threshold) {
            ranked.push_back({w, std::move(e)});
        }
    }
    std::sort(ranked.begin(), ranked.end(), [](const Ranked& a, const Ranked& b) {
        if (a.weighted != b.weighted) return a.weighted > b.weighted;
        return a.entry.recommender.id < b.entry.recommender.id;
    });
    if (ranked.size() > cfg.recommender_list_size) {
        ranked.resize(cfg.recommender_list_size);
    }

    std::vector<RecommenderEntry> out;
    out.reserve(ranked.size());
    for (auto& r : ranked) out.push_back(std::move(r.entry));
    return out;
}

void RecommenderList::update(const TrustScore& new_score, const ModelConfig& cfg) {
    std::lock_guard lock(mutex_);
    entries_ = update_recommender_list(std::move(entries_), new_score, cfg);
}

std::vector<RecommenderEntry> RecommenderList::snapshot() const {
    std::lock_guard lock(mutex_);
    return entries_;
}

}  // namespace taas::gathering
