// Copyright 2026 The schurkm Authors
// SPDX-License-Identifier: Apache-2.0

#include "schur/error.hpp"

namespace schur {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::kInvalidYamanouchi: return "InvalidYamanouchi";
    case Errc::kTooLarge: return "TooLarge";
    case Errc::kParityMismatch: return "ParityMismatch";
    case Errc::kNotStandard: return "NotStandard";
    case Errc::kOutOfRange: return "OutOfRange";
    case Errc::kLengthMismatch: return "LengthMismatch";
    case Errc::kNotBijection: return "NotBijection";
    case Errc::kBadK: return "BadK";
    case Errc::kDimensionMismatch: return "DimensionMismatch";
    case Errc::kPrefixTooLong: return "PrefixTooLong";
    case Errc::kBadPartition: return "BadPartition";
    case Errc::kOracleRequired: return "OracleRequired";
    case Errc::kInvalidArgument: return "InvalidArgument";
    case Errc::kRetryLimit: return "RetryLimit";
    case Errc::kParse: return "Parse";
  }
  return "Unknown";
}

Error::Error(Errc code, const std::string& what, std::optional<std::size_t> position)
    : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code), position_(position) {}

void fail(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace schur
