// Copyright 2026 The TaaS Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <chrono>
#include <map>
#include <optional>
#include <memory>
#include <string>
#include <string_view>

#include "taas/computation/peertrust.hpp"
#include "taas/config.hpp"
#include "taas/gathering/gatherer.hpp"

namespace taas::computation {

// Wall time spent per pillar, in seconds. Accumulates across calls.
// Contiguous slices of one assessment. community_factor also carries the
// final combination into a TrustScore. When cursor is set, the satisfaction
// slice starts there instead of at entry, so back-to-back assessments sharing
// one PillarTimings account for the whole span; assess() advances it.
struct PillarTimings {
    double satisfaction{0.0};
    double credibility{0.0};
    double transaction_factor{0.0};
    double community_factor{0.0};
    std::optional<std::chrono::steady_clock::time_point> cursor;

    [[nodiscard]] double total() const noexcept {
        return satisfaction + credibility + transaction_factor + community_factor;
    }
};

enum class Scope {
    kOffer,     // score of one product offer
    kProvider,  // provider-wide score, offer satisfaction replaced by provider satisfaction
};

struct Assessment {
    TrustScore score;
    SatisfactionBreakdown satisfaction;
    std::map<std::string, double> credibilities;  // per recommender used
};

// Scoring strategy seam. Implementations must be pure: the same context and
// config always give the same assessment.
class Assessor {
  public:
    virtual ~Assessor() = default;

    [[nodiscard]] virtual std::string_view name() const noexcept = 0;
    [[nodiscard]] virtual Assessment assess(const gathering::TrustContext& ctx,
                                            const ModelConfig& cfg, Scope scope = Scope::kOffer,
                                            PillarTimings* timings = nullptr) const = 0;
};

class PeerTrustAssessor final : public Assessor {
  public:
    std::string_view name() const noexcept override { return "peertrust"; }
    Assessment assess(const gathering::TrustContext& ctx, const ModelConfig& cfg,
                      Scope scope = Scope::kOffer,
                      PillarTimings* timings = nullptr) const override;
};

// Throws TrustError(kConfigInvalid) for unknown names.
std::unique_ptr<Assessor> make_assessor(std::string_view name);

}  // namespace taas::computation
