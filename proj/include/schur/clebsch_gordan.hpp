// Copyright 2026 The schurkm Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file clebsch_gordan.hpp
 * @brief Coupling coefficients for spin j (x) spin 1/2, Condon-Shortley phase.
 */

#pragma once

#include <cmath>

namespace schur {

/// One coupling step: prior (j, m) plus a new qubit with doubled spin
/// spin_bit, coupled to J = j + 1/2 (up) or J = j - 1/2 (!up).
struct CGQuery {
  int twice_j = 0;
  int twice_m = 0;
  int spin_bit = 1;
  bool up = true;
};

/// <J, m + s | j, m; 1/2, s>. Throws OutOfRange if the query is not a valid
/// coupling (|m| > j, parity, |M| > J, or a down step from j = 0).
double cg_half(const CGQuery& q);

namespace detail {

inline constexpr int kCgTableMaxTwiceJ = 64;

inline constexpr int kCgTableStride = 2 * kCgTableMaxTwiceJ + 3;

/// Entry tj * kCgTableStride + num is sqrt(num / (2 (tj + 1))) for
/// tj <= kCgTableMaxTwiceJ and 0 <= num <= 2 tj + 2. Filled during static
/// initialization.
extern const double* const cg_sqrt_table;

}  // namespace detail

/// Hot-loop form without validation. `twice_m_out` is the coupled M;
/// requires |twice_m_out| <= twice_j + (up ? 1 : -1).
inline double cg_half_fast(int twice_j, int twice_m_out, int spin_bit, bool up) noexcept {
  // Radicand numerator; the denominator is 2 (tj + 1) in every case.
  const int num = (up == (spin_bit > 0)) ? twice_j + twice_m_out + 1 : twice_j - twice_m_out + 1;
  const double mag = twice_j <= detail::kCgTableMaxTwiceJ
                         ? detail::cg_sqrt_table[twice_j * detail::kCgTableStride + num]
                         : std::sqrt(static_cast<double>(num) / (2.0 * (twice_j + 1)));
  return (!up && spin_bit > 0) ? -mag : mag;
}

/// sum_{J,M} C^{JM}_{j m; s} C^{JM}_{j m'; s'} - [m = m'][s = s'].
/// Zero up to rounding for every valid argument set.
double cg_orthogonality_check(int twice_j, int twice_m, int spin_bit, int twice_m_prime, int spin_bit_prime);

/// Largest |residual| of the five-argument form over all prior m, m' for
/// the given spin pair.
double cg_orthogonality_check(int twice_j, int spin_bit, int spin_bit_prime);

}  // namespace schur
