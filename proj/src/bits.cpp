// Copyright 2026 The schurkm Authors
// SPDX-License-Identifier: Apache-2.0

#include "schur/bits.hpp"

#include "schur/error.hpp"

namespace schur {

Bits parse_bits(std::string_view text) {
  if (text.size() > static_cast<std::size_t>(kMaxWires)) {
    fail(Errc::kTooLarge, "bitstring longer than 64 characters");
  }
  Bits x = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '1') {
      x |= Bits{1} << i;
    } else if (text[i] != '0') {
      throw Error(Errc::kParse, "bitstring may only contain '0' and '1'", i);
    }
  }
  return x;
}

std::string format_bits(Bits x, int n) {
  std::string out(static_cast<std::size_t>(n), '0');
  for (int i = 0; i < n; ++i) {
    if (bit_at(x, i) != 0) out[static_cast<std::size_t>(i)] = '1';
  }
  return out;
}

}  // namespace schur
