// Copyright 2026 The TaaS Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "taas/types.hpp"

namespace taas::gathering {

// Resource and service catalog as seen by gathering. Implementations may
// throw TrustError(kSourceUnavailable).
class CatalogSource {
  public:
    virtual ~CatalogSource() = default;

    [[nodiscard]] virtual std::vector<ProductOffer> offers() const = 0;
    [[nodiscard]] virtual std::optional<ProductOffer> find_offer(const std::string& offer_id) const = 0;

    // Windowed stats of provider's assets of one offer type, one record per
    // window that has data, ordered by window index.
    [[nodiscard]] virtual std::vector<ProviderStats> asset_stats(const StakeholderId& provider,
                                                                 OfferType type) const = 0;
};

// Catalog snapshot held in memory. Loadable from a JSON-lines file where
// each line is either
//   {"kind":"offer", <ProductOffer fields>}
// or
//   {"kind":"stats","provider":..,"offer_type":..,<ProviderStats fields>}.
class InMemoryCatalog final : public CatalogSource {
  public:
    InMemoryCatalog() = default;

    // Throws TrustError(kInvalidValue) on a duplicate offer id.
    void add_offer(const ProductOffer& offer);
    // Replaces any previous record for the same (provider, type, window).
    void set_stats(const StakeholderId& provider, OfferType type, const ProviderStats& stats);

    std::vector<ProductOffer> offers() const override { return offers_; }
    std::optional<ProductOffer> find_offer(const std::string& offer_id) const override;
    std::vector<ProviderStats> asset_stats(const StakeholderId& provider,
                                           OfferType type) const override;

    [[nodiscard]] std::size_t offer_count() const noexcept { return offers_.size(); }

    // Lines in a stable order: offers in insertion order, then stats by
    // (provider, type, window).
    [[nodiscard]] std::vector<std::string> to_lines() const;

    // Throws TrustError(kFileNotFound) when the path does not exist.
    static InMemoryCatalog load(const std::filesystem::path& path);
    void save(const std::filesystem::path& path) const;

  private:
    std::vector<ProductOffer> offers_;
    std::unordered_map<std::string, std::size_t> offer_index_;
    // provider id -> offer type -> window index -> stats (with provider domain kept aside)
    std::map<std::string, std::map<OfferType, std::map<int, ProviderStats>>> stats_;
    std::map<std::string, StakeholderId> providers_;
};

}  // namespace taas::gathering
