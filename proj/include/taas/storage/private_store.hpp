// Copyright 2026 The TaaS Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "taas/storage/kv_store.hpp"
#include "taas/types.hpp"

namespace taas::storage {

// Per-instance private store: trust scores with full version history, plus
// raw gathered data, model state and policies. Nothing here is ever copied
// to the Data Lake.
//
// Score keys: scores/<evaluator>/<target>/<offer_id or _>/<version>, with
// '/' and '%' percent-escaped inside components.
class PrivateStore {
  public:
    PrivateStore();
    explicit PrivateStore(const std::filesystem::path& log_path);

    PrivateStore(const PrivateStore&) = delete;
    PrivateStore& operator=(const PrivateStore&) = delete;

    // Optimistic versioning: score.version must be exactly latest + 1 (1 for
    // an empty history), otherwise TrustError(kVersionConflict). Returns the
    // stored version.
    std::uint64_t put_trust_score(const TrustScore& score);

    [[nodiscard]] std::optional<TrustScore> get_latest_score(
        const StakeholderId& evaluator, const StakeholderId& target,
        const std::optional<std::string>& offer_id = std::nullopt) const;

    // Version 0 for an empty history.
    [[nodiscard]] std::uint64_t latest_version(const StakeholderId& evaluator,
                                               const StakeholderId& target,
                                               const std::optional<std::string>& offer_id = std::nullopt) const;

    // Every stored version in ascending order.
    [[nodiscard]] std::vector<TrustScore> history(const StakeholderId& evaluator,
                                                  const StakeholderId& target,
                                                  const std::optional<std::string>& offer_id = std::nullopt) const;

    // Latest scores held by one evaluator, in key order.
    [[nodiscard]] std::vector<TrustScore> latest_scores(const StakeholderId& evaluator) const;

    // Raw data, model state and policy blobs under raw/<ns>/<key>.
    void put_raw(const std::string& ns, const std::string& key, const nlohmann::json& value);
    [[nodiscard]] std::optional<nlohmann::json> get_raw(const std::string& ns,
                                                        const std::string& key) const;

    [[nodiscard]] std::vector<std::string> keys() const { return kv_.keys(); }

    static std::string score_key(const StakeholderId& evaluator, const StakeholderId& target,
                                 const std::optional<std::string>& offer_id,
                                 std::uint64_t version);

  private:
    static std::string scope_key(const StakeholderId& evaluator, const StakeholderId& target,
                                 const std::optional<std::string>& offer_id);
    void rebuild_index();

    KvStore kv_;
    mutable std::mutex write_mutex_;
    std::map<std::string, TrustScore> latest_;  // scope key -> newest record
};

}  // namespace taas::storage
