// Copyright 2026 The TaaS Authors
// SPDX-License-Identifier: Apache-2.0

// Test-side oracles, generators and fixtures. Nothing here calls into the
// scoring code it is used to check.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "taas/types.hpp"

namespace taas::test {

inline std::filesystem::path fixture(const std::string& name) {
    return std::filesystem::path(TAAS_FIXTURE_DIR) / name;
}

class TempDir {
  public:
    TempDir() {
        static std::uint64_t counter = 0;
        std::random_device rd;
        path_ = std::filesystem::temp_directory_path() /
                ("taas-test-" + std::to_string(rd()) + "-" + std::to_string(++counter));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    [[nodiscard]] const std::filesystem::path& path() const { return path_; }
    [[nodiscard]] std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

    // Copies a fixture in so tests never write to the checked-in file.
    std::filesystem::path copy_fixture(const std::string& name) const {
        const auto dst = path_ / name;
        std::filesystem::copy_file(fixture(name), dst, std::filesystem::copy_options::overwrite_existing);
        return dst;
    }

  private:
    std::filesystem::path path_;
};

inline std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline std::size_t line_count(const std::filesystem::path& p) {
    const auto text = read_file(p);
    return static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n'));
}

// Reputation written out as one expression over the raw counters, with the
// x/0 := 0 convention and the violation term capped at 1.
inline double rep_oracle(const std::vector<ProviderStats>& w, const std::vector<double>& eps) {
    double total = 0.0;
    for (std::size_t k = 0; k < w.size(); ++k) {
        const auto& s = w[k];
        const double a = s.total_assets ? double(s.available_assets) / double(s.total_assets) : 0.0;
        const double l = s.total_assets_location
                             ? double(s.available_assets_location) / double(s.total_assets_location)
                             : 0.0;
        const double m = s.predicted_violations ? double(s.managed_violations) / double(s.predicted_violations) : 0.0;
        const double v = std::min(1.0, double(s.unmanaged_violations + s.unpredicted_violations) /
                                           double(std::max<std::int64_t>(s.predicted_violations, 1)));
        total += eps[k] * ((a + l + 2.0 * m - 2.0 * v) + 2.0) / 6.0;
    }
    return total;
}

// Hand-rolled generator of valid counters.
inline ProviderStats random_stats(std::mt19937_64& rng, int window = 1, std::int64_t max_assets = 50) {
    auto pick = [&](std::int64_t lo, std::int64_t hi) {
        return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
    };
    ProviderStats s;
    s.window_index = window;
    s.total_assets = pick(0, max_assets);
    s.available_assets = pick(0, s.total_assets);
    s.total_assets_location = pick(0, s.total_assets);
    s.available_assets_location = pick(0, s.total_assets_location);
    s.predicted_violations = pick(0, 20);
    s.managed_violations = pick(0, s.predicted_violations);
    s.unmanaged_violations = pick(0, s.predicted_violations - s.managed_violations);
    s.unpredicted_violations = pick(0, 20);
    return s;
}

// Random non-increasing window weights summing to 1.
inline std::vector<double> random_window_weights(std::mt19937_64& rng, std::size_t n) {
    std::vector<double> w(n);
    std::uniform_real_distribution<double> u(0.05, 1.0);
    for (auto& x : w) x = u(rng);
    std::sort(w.begin(), w.end(), std::greater<>());
    double sum = 0.0;
    for (double x : w) sum += x;
    for (auto& x : w) x /= sum;
    return w;
}

inline ProviderStats perfect_stats(int window = 1) {
    ProviderStats s;
    s.window_index = window;
    s.available_assets = s.total_assets = 10;
    s.available_assets_location = s.total_assets_location = 4;
    s.predicted_violations = s.managed_violations = 3;
    return s;
}

inline ProviderStats worst_stats(int window = 1) {
    ProviderStats s;
    s.window_index = window;
    s.total_assets = 10;
    s.total_assets_location = 4;
    s.predicted_violations = 4;
    s.unmanaged_violations = 2;
    s.unpredicted_violations = 2;
    return s;
}

inline ProviderStats mixed_stats(int window = 1) {
    ProviderStats s;
    s.window_index = window;
    s.available_assets = 5;
    s.total_assets = 10;
    s.available_assets_location = 2;
    s.total_assets_location = 4;
    s.predicted_violations = 4;
    s.managed_violations = 2;
    s.unmanaged_violations = 1;
    s.unpredicted_violations = 1;
    return s;
}

inline std::string random_token(std::mt19937_64& rng, std::size_t max_len = 12) {
    static const std::string alphabet = "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghij_/ -0123456789";
    std::string out(std::uniform_int_distribution<std::size_t>(0, max_len)(rng), ' ');
    for (auto& c : out) c = alphabet[std::uniform_int_distribution<std::size_t>(0, alphabet.size() - 1)(rng)];
    return out;
}

}  // namespace taas::test
