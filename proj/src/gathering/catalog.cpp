// Copyright 2026 The TaaS Authors
// SPDX-License-Identifier: Apache-2.0

#include "taas/gathering/catalog.hpp"

#include <fstream>

#include "taas/error.hpp"
#include "taas/json_io.hpp"

namespace taas::gathering {

void InMemoryCatalog::add_offer(const ProductOffer& offer) {
    if (offer.offer_id.empty() || offer.provider.id.empty()) {
        fail(ErrorCode::kInvalidValue, "offer and provider ids must be non-empty");
    }
    if (offer.created_at <= 0) {
        fail(ErrorCode::kRange, "created_at must be positive");
    }
    if (!offer_index_.emplace(offer.offer_id, offers_.size()).second) {
        fail(ErrorCode::kInvalidValue, "duplicate offer id '" + offer.offer_id + "'");
    }
    offers_.push_back(offer);
    providers_.emplace(offer.provider.id, offer.provider);
}

void InMemoryCatalog::set_stats(const StakeholderId& provider, OfferType type,
                                const ProviderStats& stats) {
    validate_stats(stats);
    stats_[provider.id][type][stats.window_index] = stats;
    providers_.emplace(provider.id, provider);
}

std::optional<ProductOffer> InMemoryCatalog::find_offer(const std::string& offer_id) const {
    const auto it = offer_index_.find(offer_id);
    if (it == offer_index_.end()) {
        return std::nullopt;
    }
    return offers_[it->second];
}

std::vector<ProviderStats> InMemoryCatalog::asset_stats(const StakeholderId& provider,
                                                        OfferType type) const {
    std::vector<ProviderStats> out;
    const auto p = stats_.find(provider.id);
    if (p == stats_.end()) return out;
    const auto t = p->second.find(type);
    if (t == p->second.end()) return out;
    for (const auto& [_, s] : t->second) out.push_back(s);
    return out;
}

std::vector<std::string> InMemoryCatalog::to_lines() const {
    std::vector<std::string> lines;
    for (const auto& offer : offers_) {
        nlohmann::json j = offer;
        j["kind"] = "offer";
        lines.push_back(j.dump());
    }
    for (const auto& [provider_id, by_type] : stats_) {
        const auto& provider = providers_.at(provider_id);
        for (const auto& [type, by_window] : by_type) {
            for (const auto& [_, s] : by_window) {
                nlohmann::json j = s;
                j["kind"] = "stats";
                j["provider"] = provider;
                j["offer_type"] = type;
                lines.push_back(j.dump());
            }
        }
    }
    return lines;
}

InMemoryCatalog InMemoryCatalog::load(const std::filesystem::path& path) {
    if (!std::filesystem::exists(path)) {
        fail(ErrorCode::kFileNotFound, "catalog file not found: " + path.string());
    }
    std::ifstream in(path);
    if (!in) {
        fail(ErrorCode::kFileNotFound, "cannot open catalog file: " + path.string());
    }
    InMemoryCatalog catalog;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
        } catch (const nlohmann::json::parse_error& e) {
            fail(ErrorCode::kInvalidValue,
                 "catalog line " + std::to_string(line_no) + ": " + e.what());
        }
        const auto kind = required<std::string>(j, "kind");
        if (kind == "offer") {
            catalog.add_offer(j.get<ProductOffer>());
        } else if (kind == "stats") {
            catalog.set_stats(required<StakeholderId>(j, "provider"),
                              required<OfferType>(j, "offer_type"), j.get<ProviderStats>());
        } else {
            fail(ErrorCode::kInvalidValue,
                 "catalog line " + std::to_string(line_no) + ": unknown kind '" + kind + "'");
        }
    }
    return catalog;
}

void InMemoryCatalog::save(const std::filesystem::path& path) const {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        fail(ErrorCode::kIo, "cannot write catalog " + path.string());
    }
    for (const auto& line : to_lines()) out << line << '\n';
}

}  // namespace taas::gathering
