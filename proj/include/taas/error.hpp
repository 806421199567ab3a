// Copyright 2026 The TaaS Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace taas {

// Machine-readable failure codes. The string form (to_string) is what
// appears in JSON error bodies and on stderr.
enum class ErrorCode {
    kWeightSum,
    kWindowWeights,
    kRange,
    kCounts,
    kInvalidValue,
    kSourceUnavailable,
    kNoRecommenders,
    kWindowMismatch,
    kEmpty,
    kVersionConflict,
    kSensitiveField,
    kNoScore,
    kNoRule,
    kBindFailure,
    kMalformedPayload,
    kNotFound,
    kFileNotFound,
    kConfigInvalid,
    kEmptyCatalog,
    kIo,
};

std::string_view to_string(ErrorCode code) noexcept;

class TrustError : public std::runtime_error {
  public:
    TrustError(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    [[nodiscard]] ErrorCode code() const noexcept { return code_; }

  private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
    throw TrustError(code, message);
}

}  // namespace taas
