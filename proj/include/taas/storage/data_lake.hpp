// Copyright 2026 The TaaS Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <fstream>
#include <functional>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "taas/types.hpp"

namespace taas::storage {

// Read side of the shared feedback log, as seen by gathering.
class FeedbackSource {
  public:
    virtual ~FeedbackSource() = default;

    // Entries about target, optionally restricted to one offer type and to
    // recorded_at >= since, in sequence order.
    [[nodiscard]] virtual std::vector<DataLakeEntry> query(
        const StakeholderId& target, std::optional<OfferType> offer_type = std::nullopt,
        std::optional<Timestamp> since = std::nullopt) const = 0;

    // Entries published by reporter, in sequence order.
    [[nodiscard]] virtual std::vector<DataLakeEntry> by_reporter(
        const StakeholderId& reporter) const = 0;

    // Visits every entry in sequence order without using any index.
    virtual void scan(const std::function<void(const DataLakeEntry&)>& visit) const = 0;
};

// Writable feedback log.
class FeedbackLog : public FeedbackSource {
  public:
    // entry.sequence is ignored and assigned by the log. Returns it.
    virtual std::uint64_t append(DataLakeEntry entry) = 0;
};

// Append-only newline-delimited log. Each line is one JSON object with keys
// exactly seq, reporter, target, offer_type, rating, interaction_id and
// recorded_at, in that order. The in-memory index is rebuilt from the file
// on open; the file is the source of truth.
class DataLake final : public FeedbackLog {
  public:
    DataLake() = default;
    explicit DataLake(const std::filesystem::path& path);

    DataLake(const DataLake&) = delete;
    DataLake& operator=(const DataLake&) = delete;

    // entry.sequence is ignored and assigned here. The rating is rounded to
    // four decimal places. Returns the assigned sequence number.
    std::uint64_t append(DataLakeEntry entry) override;

    // Appends a record given as a JSON object without "seq". Any key outside
    // the published schema is rejected with TrustError(kSensitiveField).
    std::uint64_t append_record(const nlohmann::json& record);

    std::vector<DataLakeEntry> query(const StakeholderId& target,
                                     std::optional<OfferType> offer_type = std::nullopt,
                                     std::optional<Timestamp> since = std::nullopt) const override;
    std::vector<DataLakeEntry> by_reporter(const StakeholderId& reporter) const override;
    void scan(const std::function<void(const DataLakeEntry&)>& visit) const override;

    [[nodiscard]] std::vector<DataLakeEntry> entries() const;
    [[nodiscard]] std::size_t size() const;
    [[nodiscard]] std::uint64_t last_sequence() const;

    static std::string serialize_line(const DataLakeEntry& entry);
    // Strict inverse of serialize_line.
    static DataLakeEntry parse_line(std::string_view line);

  private:
    void index_entry(DataLakeEntry entry);

    mutable std::shared_mutex mutex_;
    std::mutex append_mutex_;
    std::vector<DataLakeEntry> entries_;
    std::unordered_map<std::string, std::vector<std::size_t>> by_target_;
    std::unordered_map<std::string, std::vector<std::size_t>> by_reporter_;
    std::optional<std::ofstream> file_;
};

double round_rating(double rating) noexcept;

}  // namespace taas::storage
