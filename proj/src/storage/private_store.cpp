// Copyright 2026 The TaaS Authors
// SPDX-License-Identifier: Apache-2.0

#include "taas/storage/private_store.hpp"

#include <cstdio>

#include "taas/error.hpp"
#include "taas/json_io.hpp"

namespace taas::storage {

namespace {

std::string escape(const std::string& component) {
    std::string out;
    out.reserve(component.size());
    for (char c : component) {
        if (c == '%') out += "%25";
        else if (c == '/') out += "%2F";
        else out += c;
    }
    return out;
}

std::string version_suffix(std::uint64_t version) {
    char buf[24];
    std::snprintf(buf, sizeof buf, "%020llu", static_cast<unsigned long long>(version));
    return buf;
}

constexpr const char* kScorePrefix = "scores/";

}  // namespace

PrivateStore::PrivateStore() = default;

PrivateStore::PrivateStore(const std::filesystem::path& log_path) : kv_(log_path) {
    rebuild_index();
}

void PrivateStore::rebuild_index() {
    for (const auto& [key, value] : kv_.scan_prefix(kScorePrefix)) {
        auto score = nlohmann::json::parse(value).get<TrustScore>();
        const auto scope = scope_key(score.evaluator, score.target, score.offer_id);
        auto it = latest_.find(scope);
        if (it == latest_.end() || it->second.version < score.version) {
            latest_[scope] = std::move(score);
        }
    }
}

std::string PrivateStore::scope_key(const StakeholderId& evaluator, const StakeholderId& target,
                                    const std::optional<std::string>& offer_id) {
    return std::string(kScorePrefix) + escape(evaluator.id) + "/" + escape(target.id) + "/" +
           (offer_id ? escape(*offer_id) : std::string("_")) + "/";
}

std::string PrivateStore::score_key(const StakeholderId& evaluator, const StakeholderId& target,
                                    const std::optional<std::string>& offer_id,
                                    std::uint64_t version) {
    return scope_key(evaluator, target, offer_id) + version_suffix(version);
}

std::uint64_t PrivateStore::put_trust_score(const TrustScore& score) {
    if (!in_unit(score.score) || !in_unit(score.satisfaction) || !in_unit(score.credibility) ||
        !in_unit(score.transaction_factor) || !in_unit(score.community_factor)) {
        fail(ErrorCode::kRange, "trust score component outside [0,1]");
    }
    const auto scope = scope_key(score.evaluator, score.target, score.offer_id);
    std::lock_guard lock(write_mutex_);
    const auto it = latest_.find(scope);
    const std::uint64_t current = it == latest_.end() ? 0 : it->second.version;
    if (score.version != current + 1) {
        fail(ErrorCode::kVersionConflict, "expected version " + std::to_string(current + 1) +
                                              ", got " + std::to_string(score.version));
    }
    if (!kv_.put_if_absent(scope + version_suffix(score.version), nlohmann::json(score).dump())) {
        fail(ErrorCode::kVersionConflict, "version already stored");
    }
    latest_[scope] = score;
    return score.version;
}

std::optional<TrustScore> PrivateStore::get_latest_score(
    const StakeholderId& evaluator, const StakeholderId& target,
    const std::optional<std::string>& offer_id) const {
    std::lock_guard lock(write_mutex_);
    const auto it = latest_.find(scope_key(evaluator, target, offer_id));
    if (it == latest_.end()) {
        return std::nullopt;
    }
    return it->second;
}

std::uint64_t PrivateStore::latest_version(const StakeholderId& evaluator,
                                           const StakeholderId& target,
                                           const std::optional<std::string>& offer_id) const {
    const auto latest = get_latest_score(evaluator, target, offer_id);
    return latest ? latest->version : 0;
}

std::vector<TrustScore> PrivateStore::history(const StakeholderId& evaluator,
                                              const StakeholderId& target,
                                              const std::optional<std::string>& offer_id) const {
    std::vector<TrustScore> out;
    for (const auto& [_, value] : kv_.scan_prefix(scope_key(evaluator, target, offer_id))) {
        out.push_back(nlohmann::json::parse(value).get<TrustScore>());
    }
    return out;
}

std::vector<TrustScore> PrivateStore::latest_scores(const StakeholderId& evaluator) const {
    const auto prefix = std::string(kScorePrefix) + escape(evaluator.id) + "/";
    std::lock_guard lock(write_mutex_);
    std::vector<TrustScore> out;
    for (auto it = latest_.lower_bound(prefix); it != latest_.end(); ++it) {
        if (it->first.compare(0, prefix.size(), prefix) != 0) break;
        out.push_back(it->second);
    }
    return out;
}

void PrivateStore::put_raw(const std::string& ns, const std::string& key,
                           const nlohmann::json& value) {
    kv_.put("raw/" + escape(ns) + "/" + escape(key), value.dump());
}

std::optional<nlohmann::json> PrivateStore::get_raw(const std::string& ns,
                                                    const std::string& key) const {
    const auto value = kv_.get("raw/" + escape(ns) + "/" + escape(key));
    if (!value) {
        return std::nullopt;
    }
    return nlohmann::json::parse(*value);
}

}  // namespace taas::storage
