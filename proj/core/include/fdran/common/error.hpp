// Copyright 2026 The fdran Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fdran {

enum class ErrorCode {
  kRankDeficient,
  kDimensionMismatch,
  kEmptyInput,
  kLayerMismatch,
  kOutOfGrid,
  kFormatError,
  kFairnessInfeasible,
  kIncompleteRateMap,
  kInvalidArgument,
  kBadBounds,
  kPumpFailed,
  kCapacityExceeded,
  kConfigError,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kRankDeficient: return "RankDeficient";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kEmptyInput: return "EmptyInput";
    case ErrorCode::kLayerMismatch: return "LayerMismatch";
    case ErrorCode::kOutOfGrid: return "OutOfGrid";
    case ErrorCode::kFormatError: return "FormatError";
    case ErrorCode::kFairnessInfeasible: return "FairnessInfeasible";
    case ErrorCode::kIncompleteRateMap: return "IncompleteRateMap";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kBadBounds: return "BadBounds";
    case ErrorCode::kPumpFailed: return "PumpFailed";
    case ErrorCode::kCapacityExceeded: return "CapacityExceeded";
    case ErrorCode::kConfigError: return "ConfigError";
  }
  return "Unknown";
}

/// Single exception type for the library; callers switch on code().
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace fdran
