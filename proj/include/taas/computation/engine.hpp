// Copyright 2026 The TaaS Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <chrono>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "taas/computation/assessor.hpp"
#include "taas/config.hpp"
#include "taas/error.hpp"
#include "taas/gathering/gatherer.hpp"
#include "taas/gathering/recommenders.hpp"
#include "taas/storage/data_lake.hpp"
#include "taas/storage/private_store.hpp"

namespace taas::computation {

// Wall time per pipeline phase, in seconds.
struct PhaseTimings {
    double gathering{0.0};
    double compute{0.0};
    double storage{0.0};
    PillarTimings pillars;

    [[nodiscard]] double total() const noexcept { return gathering + compute + storage; }
};

// Outcome for one requested offer: a score, or an error that did not stop
// the rest of the batch.
struct OfferResult {
    std::string offer_id;
    std::optional<TrustScore> score;
    std::optional<ErrorCode> error;
    std::string message;

    [[nodiscard]] bool ok() const noexcept { return score.has_value(); }
};

// Builds a context for a pair with no trust history by walking every source
// in full (whole Data Lake, full catalog listing). Pillars with no evidence
// fall back to the cold-start prior inside the assessor. The context is
// flagged cold_start.
gathering::TrustContext cold_start_bootstrap(const StakeholderId& evaluator,
                                             const ProductOffer& offer,
                                             const gathering::Sources& sources,
                                             const ModelConfig& cfg,
                                             std::span<const gathering::RecommenderEntry> list,
                                             Timestamp now);

// The gather -> compute -> store pipeline for one TaaS instance. Each phase
// runs over the whole batch before the next starts, so offers in a batch
// see the same world.
class TrustEngine {
  public:
    TrustEngine(const ModelConfig& cfg, const gathering::CatalogSource& catalog,
                storage::FeedbackLog& datalake, storage::PrivateStore& store);

    // Results come back in input order. Per-offer failures become error
    // entries.
    std::vector<OfferResult> score_offers(const StakeholderId& evaluator,
                                          std::span<const std::string> offer_ids, Timestamp now,
                                          PhaseTimings* timings = nullptr);
    std::vector<OfferResult> score_offers(const StakeholderId& evaluator,
                                          std::span<const ProductOffer> offers, Timestamp now,
                                          PhaseTimings* timings = nullptr);

    [[nodiscard]] const ModelConfig& config() const noexcept { return cfg_; }
    [[nodiscard]] gathering::RecommenderList& recommenders() noexcept { return recommenders_; }
    [[nodiscard]] gathering::Sources sources() const noexcept;

  private:
    struct Pending;

    std::vector<OfferResult> run(const StakeholderId& evaluator, std::vector<Pending> batch,
                                 Timestamp now, PhaseTimings* timings,
                                 std::chrono::steady_clock::time_point entered);
    void store_score(TrustScore& score);

    ModelConfig cfg_;
    const gathering::CatalogSource& catalog_;
    storage::FeedbackLog& datalake_;
    storage::PrivateStore& store_;
    std::unique_ptr<Assessor> assessor_;
    gathering::RecommenderList recommenders_;
};

}  // namespace taas::computation
