// Copyright 2026 The schurkm Authors
// SPDX-License-Identifier: Apache-2.0

#include "schur/clebsch_gordan.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>

#include "schur/error.hpp"

namespace schur {

namespace detail {

namespace {

std::array<double, (kCgTableMaxTwiceJ + 1) * kCgTableStride> build_table() {
  std::array<double, (kCgTableMaxTwiceJ + 1) * kCgTableStride> t{};
  for (int tj = 0; tj <= kCgTableMaxTwiceJ; ++tj) {
    const int den = 2 * (tj + 1);
    for (int num = 0; num <= den; ++num) {
      t[static_cast<std::size_t>(tj * kCgTableStride + num)] = std::sqrt(static_cast<double>(num) / den);
    }
  }
  return t;
}

const std::array<double, (kCgTableMaxTwiceJ + 1) * kCgTableStride> kTable = build_table();

}  // namespace

const double* const cg_sqrt_table = kTable.data();

}  // namespace detail

namespace {

bool valid_prior(int twice_j, int twice_m) {
  return twice_j >= 0 && std::abs(twice_m) <= twice_j && (twice_j - twice_m) % 2 == 0;
}

// Coefficient, or 0 when the coupled state does not exist.
double cg_or_zero(int twice_j, int twice_m, int spin_bit, bool up) {
  const int twice_big_j = twice_j + (up ? 1 : -1);
  const int twice_big_m = twice_m + spin_bit;
  if (twice_big_j < 0 || std::abs(twice_big_m) > twice_big_j) return 0.0;
  return cg_half_fast(twice_j, twice_big_m, spin_bit, up);
}

}  // namespace

double cg_half(const CGQuery& q) {
  if (q.spin_bit != 1 && q.spin_bit != -1) fail(Errc::kOutOfRange, "spin_bit must be +1 or -1");
  if (!valid_prior(q.twice_j, q.twice_m)) fail(Errc::kOutOfRange, "prior (j, m) is not a valid spin state");
  if (!q.up && q.twice_j < 1) fail(Errc::kOutOfRange, "cannot couple down from j = 0");
  const int twice_big_j = q.twice_j + (q.up ? 1 : -1);
  const int twice_big_m = q.twice_m + q.spin_bit;
  if (std::abs(twice_big_m) > twice_big_j) fail(Errc::kOutOfRange, "|M| exceeds J");
  return cg_half_fast(q.twice_j, twice_big_m, q.spin_bit, q.up);
}

double cg_orthogonality_check(int twice_j, int twice_m, int spin_bit, int twice_m_prime, int spin_bit_prime) {
  if (!valid_prior(twice_j, twice_m) || !valid_prior(twice_j, twice_m_prime)) {
    fail(Errc::kOutOfRange, "prior (j, m) is not a valid spin state");
  }
  double sum = 0.0;
  if (twice_m + spin_bit == twice_m_prime + spin_bit_prime) {
    for (bool up : {true, false}) {
      sum += cg_or_zero(twice_j, twice_m, spin_bit, up) * cg_or_zero(twice_j, twice_m_prime, spin_bit_prime, up);
    }
  }
  const double delta = (twice_m == twice_m_prime && spin_bit == spin_bit_prime) ? 1.0 : 0.0;
  return sum - delta;
}

double cg_orthogonality_check(int twice_j, int spin_bit, int spin_bit_prime) {
  double worst = 0.0;
  for (int m = -twice_j; m <= twice_j; m += 2) {
    for (int mp = -twice_j; mp <= twice_j; mp += 2) {
      worst = std::max(worst, std::abs(cg_orthogonality_check(twice_j, m, spin_bit, mp, spin_bit_prime)));
    }
  }
  return worst;
}

}  // namespace schur
