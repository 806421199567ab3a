// Copyright 2026 The TaaS Authors
// SPDX-License-Identifier: Apache-2.0

#include "taas/storage/data_lake.hpp"

#include <array>
#include <cmath>

#include "taas/error.hpp"

namespace taas::storage {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr std::array<std::string_view, 7> kLineKeys = {
    "seq", "reporter", "target", "offer_type", "rating", "interaction_id", "recorded_at"};

void check_entry(const DataLakeEntry& e) {
    if (e.reporter.id.empty() || e.target.id.empty()) {
        fail(ErrorCode::kInvalidValue, "reporter and target must be non-empty");
    }
    if (!std::isfinite(e.rating) || !in_unit(e.rating)) {
        fail(ErrorCode::kRange, "rating outside [0,1]");
    }
    if (e.recorded_at <= 0) {
        fail(ErrorCode::kRange, "recorded_at must be positive");
    }
}

template <typename T>
T member(const nlohmann::json& j, const char* key) {
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorCode::kInvalidValue, std::string("data lake field '") + key + "': " + e.what());
    }
}

std::optional<OfferType> offer_type_member(const nlohmann::json& j) {
    if (!j.contains("offer_type") || j.at("offer_type").is_null()) {
        return std::nullopt;
    }
    return parse_offer_type(member<std::string>(j, "offer_type"));
}

}  // namespace

double round_rating(double rating) noexcept { return std::round(rating * 1e4) / 1e4; }

DataLake::DataLake(const std::filesystem::path& path) {
    if (std::filesystem::exists(path)) {
        std::ifstream in(path);
        std::string line;
        std::size_t line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            if (line.empty()) continue;
            auto entry = parse_line(line);
            if (entry.sequence != entries_.size() + 1) {
                fail(ErrorCode::kIo, "data lake sequence gap at line " + std::to_string(line_no));
            }
            index_entry(std::move(entry));
        }
    }
    file_.emplace(path, std::ios::app | std::ios::binary);
    if (!*file_) {
        fail(ErrorCode::kIo, "cannot open data lake " + path.string());
    }
}

void DataLake::index_entry(DataLakeEntry entry) {
    const auto pos = entries_.size();
    by_target_[entry.target.id].push_back(pos);
    by_reporter_[entry.reporter.id].push_back(pos);
    entries_.push_back(std::move(entry));
}

std::string DataLake::serialize_line(const DataLakeEntry& e) {
    ordered_json j;
    j["seq"] = e.sequence;
    j["reporter"] = e.reporter.id;
    j["target"] = e.target.id;
    j["offer_type"] = e.offer_type ? ordered_json(std::string(to_string(*e.offer_type)))
                                   : ordered_json(nullptr);
    j["rating"] = e.rating;
    j["interaction_id"] = e.interaction_id;
    j["recorded_at"] = e.recorded_at;
    return j.dump();
}

DataLakeEntry DataLake::parse_line(std::string_view line) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
        fail(ErrorCode::kInvalidValue, std::string("data lake line is not JSON: ") + e.what());
    }
    if (!j.is_object() || j.size() != kLineKeys.size()) {
        fail(ErrorCode::kInvalidValue, "data lake line must carry exactly the published keys");
    }
    for (auto key : kLineKeys) {
        if (!j.contains(key)) {
            fail(ErrorCode::kInvalidValue, "data lake line missing '" + std::string(key) + "'");
        }
    }
    DataLakeEntry e;
    e.sequence = member<std::uint64_t>(j, "seq");
    e.reporter = make_stakeholder(member<std::string>(j, "reporter"));
    e.target = make_stakeholder(member<std::string>(j, "target"));
    e.offer_type = offer_type_member(j);
    e.rating = member<double>(j, "rating");
    e.interaction_id = member<std::string>(j, "interaction_id");
    e.recorded_at = member<Timestamp>(j, "recorded_at");
    check_entry(e);
    return e;
}

std::uint64_t DataLake::append(DataLakeEntry entry) {
    entry.rating = round_rating(entry.rating);
    entry.reporter.domain.clear();
    entry.target.domain.clear();
    check_entry(entry);

    std::lock_guard appender(append_mutex_);
    entry.sequence = last_sequence() + 1;
    if (file_) {
        *file_ << serialize_line(entry) << '\n';
        file_->flush();
        if (!*file_) {
            fail(ErrorCode::kIo, "data lake write failed");
        }
    }
    const auto seq = entry.sequence;
    std::unique_lock lock(mutex_);
    index_entry(std::move(entry));
    return seq;
}

std::uint64_t DataLake::append_record(const nlohmann::json& record) {
    if (!record.is_object()) {
        fail(ErrorCode::kInvalidValue, "data lake record must be an object");
    }
    for (const auto& [key, _] : record.items()) {
        if (key == "seq") {
            fail(ErrorCode::kInvalidValue, "'seq' is assigned on append");
        }
        bool published = false;
        for (auto allowed : kLineKeys) published = published || key == allowed;
        if (!published) {
            fail(ErrorCode::kSensitiveField, "field '" + key + "' may not be published");
        }
    }
    DataLakeEntry e;
    e.reporter = make_stakeholder(member<std::string>(record, "reporter"));
    e.target = make_stakeholder(member<std::string>(record, "target"));
    e.offer_type = offer_type_member(record);
    e.rating = member<double>(record, "rating");
    e.interaction_id = member<std::string>(record, "interaction_id");
    e.recorded_at = member<Timestamp>(record, "recorded_at");
    return append(std::move(e));
}

std::vector<DataLakeEntry> DataLake::query(const StakeholderId& target,
                                           std::optional<OfferType> offer_type,
                                           std::optional<Timestamp> since) const {
    std::shared_lock lock(mutex_);
    std::vector<DataLakeEntry> out;
    const auto it = by_target_.find(target.id);
    if (it == by_target_.end()) {
        return out;
    }
    for (auto pos : it->second) {
        const auto& e = entries_[pos];
        if (offer_type && e.offer_type != offer_type) continue;
        if (since && e.recorded_at < *since) continue;
        out.push_back(e);
    }
    return out;
}

std::vector<DataLakeEntry> DataLake::by_reporter(const StakeholderId& reporter) const {
    std::shared_lock lock(mutex_);
    std::vector<DataLakeEntry> out;
    const auto it = by_reporter_.find(reporter.id);
    if (it == by_reporter_.end()) {
        return out;
    }
    out.reserve(it->second.size());
    for (auto pos : it->second) out.push_back(entries_[pos]);
    return out;
}

void DataLake::scan(const std::function<void(const DataLakeEntry&)>& visit) const {
    std::shared_lock lock(mutex_);
    for (const auto& e : entries_) visit(e);
}

std::vector<DataLakeEntry> DataLake::entries() const {
    std::shared_lock lock(mutex_);
    return entries_;
}

std::size_t DataLake::size() const {
    std::shared_lock lock(mutex_);
    return entries_.size();
}

std::uint64_t DataLake::last_sequence() const {
    std::shared_lock lock(mutex_);
    return entries_.empty() ? 0 : entries_.back().sequence;
}

}  // namespace taas::storage
