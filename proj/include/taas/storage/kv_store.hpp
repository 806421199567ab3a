// Copyright 2026 The TaaS Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

namespace taas::storage {

// Ordered embedded key-value store. When opened on a file, every put is
// appended as one JSON line ({"k":..,"v":..}) and the map is rebuilt from
// the log on open, so the file alone reconstructs the store.
class KvStore {
  public:
    KvStore() = default;
    explicit KvStore(const std::filesystem::path& log_path);

    KvStore(const KvStore&) = delete;
    KvStore& operator=(const KvStore&) = delete;

    void put(const std::string& key, const std::string& value);
    // Writes only if the key is absent. Returns false when it already exists.
    bool put_if_absent(const std::string& key, const std::string& value);

    [[nodiscard]] std::optional<std::string> get(const std::string& key) const;
    // All pairs whose key starts with prefix, in key order.
    [[nodiscard]] std::vector<std::pair<std::string, std::string>> scan_prefix(
        const std::string& prefix) const;
    [[nodiscard]] std::vector<std::string> keys() const;
    [[nodiscard]] std::size_t size() const;

  private:
    void append_log(const std::string& key, const std::string& value);

    mutable std::shared_mutex mutex_;
    std::map<std::string, std::string> data_;
    std::optional<std::ofstream> log_;
};

}  // namespace taas::storage
