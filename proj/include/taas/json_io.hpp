// Copyright 2026 The TaaS Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <json.hpp>

#include "taas/error.hpp"
#include "taas/types.hpp"

// JSON mappings for the domain types. from_json validates field types and
// the type invariants; failures surface as TrustError(kInvalidValue) or the
// type's own validation code.
namespace taas {

void to_json(nlohmann::json& j, const StakeholderId& s);
// Accepts either {"id":..,"domain":..} or a bare id string.
void from_json(const nlohmann::json& j, StakeholderId& s);

void to_json(nlohmann::json& j, OfferType t);
void from_json(const nlohmann::json& j, OfferType& t);

void to_json(nlohmann::json& j, const ProductOffer& o);
void from_json(const nlohmann::json& j, ProductOffer& o);

void to_json(nlohmann::json& j, const ProviderStats& s);
void from_json(const nlohmann::json& j, ProviderStats& s);

void to_json(nlohmann::json& j, const Recommendation& r);
void from_json(const nlohmann::json& j, Recommendation& r);

void to_json(nlohmann::json& j, const TrustScore& s);
void from_json(const nlohmann::json& j, TrustScore& s);

void to_json(nlohmann::json& j, EventKind k);
void from_json(const nlohmann::json& j, EventKind& k);

void to_json(nlohmann::json& j, const TrustEvent& e);
void from_json(const nlohmann::json& j, TrustEvent& e);

void to_json(nlohmann::json& j, const PolicyRule& r);
void from_json(const nlohmann::json& j, PolicyRule& r);

// Reads a required member, mapping nlohmann type errors onto kInvalidValue.
template <typename T>
T required(const nlohmann::json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) {
        fail(ErrorCode::kInvalidValue, std::string("missing field '") + key + "'");
    }
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorCode::kInvalidValue, std::string("field '") + key + "': " + e.what());
    }
}

}  // namespace taas
