// Copyright 2026 The TaaS Authors
// SPDX-License-Identifier: Apache-2.0

#include "taas/storage/kv_store.hpp"

#include <json.hpp>

#include "taas/error.hpp"

namespace taas::storage {

KvStore::KvStore(const std::filesystem::path& log_path) {
    if (std::filesystem::exists(log_path)) {
        std::ifstream in(log_path);
        std::string line;
        std::size_t line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            if (line.empty()) continue;
            try {
                const auto rec = nlohmann::json::parse(line);
                data_[rec.at("k").get<std::string>()] = rec.at("v").get<std::string>();
            } catch (const nlohmann::json::exception& e) {
                fail(ErrorCode::kIo, "corrupt store log at line " + std::to_string(line_no) + ": " +
                                         e.what());
            }
        }
    }
    log_.emplace(log_path, std::ios::app);
    if (!*log_) {
        fail(ErrorCode::kIo, "cannot open store log " + log_path.string());
    }
}

void KvStore::append_log(const std::string& key, const std::string& value) {
    if (!log_) return;
    *log_ << nlohmann::json{{"k", key}, {"v", value}}.dump() << '\n';
    log_->flush();
}

void KvStore::put(const std::string& key, const std::string& value) {
    std::unique_lock lock(mutex_);
    append_log(key, value);
    data_[key] = value;
}

bool KvStore::put_if_absent(const std::string& key, const std::string& value) {
    std::unique_lock lock(mutex_);
    if (data_.contains(key)) {
        return false;
    }
    append_log(key, value);
    data_.emplace(key, value);
    return true;
}

std::optional<std::string> KvStore::get(const std::string& key) const {
    std::shared_lock lock(mutex_);
    const auto it = data_.find(key);
    if (it == data_.end()) {
        return std::nullopt;
    }
    return it->second;
}

std::vector<std::pair<std::string, std::string>> KvStore::scan_prefix(
    const std::string& prefix) const {
    std::shared_lock lock(mutex_);
    std::vector<std::pair<std::string, std::string>> out;
    for (auto it = data_.lower_bound(prefix); it != data_.end(); ++it) {
        if (it->first.compare(0, prefix.size(), prefix) != 0) break;
        out.emplace_back(it->first, it->second);
    }
    return out;
}

std::vector<std::string> KvStore::keys() const {
    std::shared_lock lock(mutex_);
    std::vector<std::string> out;
    out.reserve(data_.size());
    for (const auto& [k, _] : data_) out.push_back(k);
    return out;
}

std::size_t KvStore::size() const {
    std::shared_lock lock(mutex_);
    return data_.size();
}

}  // namespace taas::storage
