// Copyright 2026 The schurkm Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace schur {

enum class Errc {
  kInvalidYamanouchi,
  kTooLarge,
  kParityMismatch,
  kNotStandard,
  kOutOfRange,
  kLengthMismatch,
  kNotBijection,
  kBadK,
  kDimensionMismatch,
  kPrefixTooLong,
  kBadPartition,
  kOracleRequired,
  kInvalidArgument,
  kRetryLimit,
  kParse,
};

std::string_view errc_name(Errc code) noexcept;

/// Library-wide exception. `position()` is set for errors that point into an
/// input sequence (e.g. the first violating prefix of a Yamanouchi string).
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what, std::optional<std::size_t> position = std::nullopt);

  [[nodiscard]] Errc code() const noexcept { return code_; }
  [[nodiscard]] std::optional<std::size_t> position() const noexcept { return position_; }

 private:
  Errc code_;
  std::optional<std::size_t> position_;
};

[[noreturn]] void fail(Errc code, const std::string& what);

}  // namespace schur
