// Copyright 2026 The schurkm Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <string_view>

namespace schur {

/// Computational basis state of up to 64 wires. Qubit i (1-indexed) is bit
/// i-1; bit value 0 is spin up (m = +1/2) and 1 is spin down (m = -1/2).
using Bits = std::uint64_t;

inline constexpr int kMaxWires = 64;

constexpr Bits low_mask(int n) noexcept {
  return n >= 64 ? ~Bits{0} : (Bits{1} << n) - 1;
}

constexpr int bit_at(Bits x, int i) noexcept { return static_cast<int>((x >> i) & 1U); }

/// 2 * (total azimuthal spin) of the first n qubits of x.
constexpr int twice_weight_m(Bits x, int n) noexcept {
  return n - 2 * std::popcount(x & low_mask(n));
}

/// Parses "0110" (leftmost character = qubit 1). Throws Errc::kParse.
Bits parse_bits(std::string_view text);

/// Inverse of parse_bits.
std::string format_bits(Bits x, int n);

}  // namespace schur
