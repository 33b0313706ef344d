// Copyright 2026 The schurkm Authors
// SPDX-License-Identifier: Apache-2.0

#include "schur/spin_combinatorics.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <numeric>

#include "schur/bits.hpp"
#include "schur/error.hpp"

namespace schur {

namespace {

constexpr int kMaxEnumerateQubits = 20;

void check_qubits(int n) {
  if (n < 1) fail(Errc::kInvalidArgument, "qubit count must be >= 1");
  if (n > kMaxPathQubits) fail(Errc::kTooLarge, "paths are limited to 64 qubits");
}

void enumerate_rec(int n, int steps_taken, int twice_j, std::uint64_t steps, std::vector<SpinPath>& out) {
  if (steps_taken == n - 1) {
    out.push_back(SpinPath::from_steps_unchecked(n, steps));
    return;
  }
  if (twice_j >= 1) enumerate_rec(n, steps_taken + 1, twice_j - 1, steps, out);
  enumerate_rec(n, steps_taken + 1, twice_j + 1, steps | (std::uint64_t{1} << steps_taken), out);
}

}  // namespace

// ---------------------------------------------------------------------------
// SpinPath

SpinPath SpinPath::from_steps_unchecked(int qubits, std::uint64_t steps) {
  check_qubits(qubits);
  SpinPath p;
  p.qubits_ = qubits;
  p.steps_ = steps & low_mask(qubits - 1);
  return p;
}

int SpinPath::twice_j_at(int k) const noexcept {
  const int taken = k - 1;
  const int ones = std::popcount(steps_ & low_mask(taken));
  return 1 + 2 * ones - taken;
}

SpinPath SpinPath::prefix(int k) const {
  if (k < 1 || k > qubits_) fail(Errc::kPrefixTooLong, "prefix length out of range");
  return from_steps_unchecked(k, steps_);
}

bool SpinPath::has_prefix(const SpinPath& p) const noexcept {
  if (p.qubits_ > qubits_) return false;
  return (steps_ & low_mask(p.qubits_ - 1)) == p.steps_;
}

SpinPath SpinPath::extended(bool up) const {
  if (qubits_ >= kMaxPathQubits) fail(Errc::kTooLarge, "paths are limited to 64 qubits");
  if (!up && twice_j_at(qubits_) == 0) {
    throw Error(Errc::kInvalidYamanouchi, "step would reach j = -1/2", static_cast<std::size_t>(qubits_));
  }
  SpinPath p = *this;
  if (up) p.steps_ |= std::uint64_t{1} << (qubits_ - 1);
  ++p.qubits_;
  return p;
}

std::string SpinPath::to_string() const { return format_bits(steps_, qubits_ - 1); }

std::strong_ordering operator<=>(const SpinPath& a, const SpinPath& b) noexcept {
  const int common = std::min(a.num_steps(), b.num_steps());
  for (int i = 0; i < common; ++i) {
    const bool x = a.step_up(i);
    const bool y = b.step_up(i);
    if (x != y) return x ? std::strong_ordering::greater : std::strong_ordering::less;
  }
  return a.qubits_ <=> b.qubits_;
}

std::strong_ordering operator<=>(const SchurLabel& a, const SchurLabel& b) noexcept {
  if (auto c = a.path <=> b.path; c != 0) return c;
  return a.m.twice <=> b.m.twice;
}

SchurLabel make_label(const SpinPath& path, int twice_m) {
  const int twice_j = path.endpoint().twice;
  if (std::abs(twice_m) > twice_j) fail(Errc::kOutOfRange, "|M| exceeds J");
  if ((twice_j - twice_m) % 2 != 0) fail(Errc::kParityMismatch, "2M and 2J must have equal parity");
  return {path, {twice_m}};
}

// ---------------------------------------------------------------------------
// Paths

SpinPath validate_path(int qubits, std::uint64_t steps) {
  check_qubits(qubits);
  int twice_j = 1;
  for (int i = 0; i < qubits - 1; ++i) {
    twice_j += ((steps >> i) & 1U) != 0 ? 1 : -1;
    if (twice_j < 0) {
      throw Error(Errc::kInvalidYamanouchi, "prefix of length " + std::to_string(i + 1) + " has too many zeroes",
                  static_cast<std::size_t>(i + 1));
    }
  }
  return SpinPath::from_steps_unchecked(qubits, steps);
}

SpinPath validate_path(std::string_view bits) {
  if (bits.size() + 1 > static_cast<std::size_t>(kMaxPathQubits)) {
    fail(Errc::kTooLarge, "paths are limited to 64 qubits");
  }
  return validate_path(static_cast<int>(bits.size()) + 1, parse_bits(bits));
}

std::vector<SpinPath> enumerate_paths(int n) {
  check_qubits(n);
  if (n > kMaxEnumerateQubits) fail(Errc::kTooLarge, "enumerate_paths is limited to n <= 20");
  std::vector<SpinPath> out;
  enumerate_rec(n, 0, 1, 0, out);
  return out;
}

BigInt binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  BigInt r = 1;
  for (int i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

YoungShape2 shape_for(int n, DoubledSpin spin) {
  if (n < 0) fail(Errc::kInvalidArgument, "negative box count");
  if (spin.twice < 0 || spin.twice > n) fail(Errc::kOutOfRange, "2J must lie in [0, n]");
  if ((n - spin.twice) % 2 != 0) fail(Errc::kParityMismatch, "2J and n must have equal parity");
  return {(n + spin.twice) / 2, (n - spin.twice) / 2};
}

BigInt dim_d(int n, DoubledSpin spin) {
  const YoungShape2 shape = shape_for(n, spin);
  return binomial(n, shape.row2) - binomial(n, shape.row2 - 1);
}

// ---------------------------------------------------------------------------
// Tableaux

bool StdTableau2::is_standard() const {
  const std::size_t n = top.size() + bottom.size();
  if (bottom.size() > top.size()) return false;
  std::vector<bool> seen(n + 1, false);
  for (const auto* row : {&top, &bottom}) {
    for (std::size_t c = 0; c < row->size(); ++c) {
      const int v = (*row)[c];
      if (v < 1 || static_cast<std::size_t>(v) > n || seen[static_cast<std::size_t>(v)]) return false;
      seen[static_cast<std::size_t>(v)] = true;
      if (c > 0 && (*row)[c - 1] >= v) return false;
    }
  }
  for (std::size_t c = 0; c < bottom.size(); ++c) {
    if (top[c] >= bottom[c]) return false;
  }
  return true;
}

StdTableau2 path_to_tableau(const SpinPath& path) {
  StdTableau2 t;
  t.top.push_back(1);
  for (int i = 0; i < path.num_steps(); ++i) {
    (path.step_up(i) ? t.top : t.bottom).push_back(i + 2);
  }
  return t;
}

SpinPath tableau_to_path(const StdTableau2& tableau) {
  if (tableau.top.empty() || !tableau.is_standard()) fail(Errc::kNotStandard, "tableau is not standard");
  const int n = static_cast<int>(tableau.top.size() + tableau.bottom.size());
  if (n > kMaxPathQubits) fail(Errc::kTooLarge, "paths are limited to 64 qubits");
  std::uint64_t steps = 0;
  for (int v : tableau.top) {
    if (v >= 2) steps |= std::uint64_t{1} << (v - 2);
  }
  // A standard tableau always yields a valid Yamanouchi word.
  return validate_path(n, steps);
}

StdTableau2 gnw_sample_tableau(const YoungShape2& shape, Rng& rng) {
  if (shape.row2 < 0 || shape.row1 < shape.row2) fail(Errc::kInvalidArgument, "not a two-row partition");
  std::array<int, 2> len = {shape.row1, shape.row2};
  StdTableau2 t;
  t.top.assign(static_cast<std::size_t>(shape.row1), 0);
  t.bottom.assign(static_cast<std::size_t>(shape.row2), 0);
  for (int value = shape.boxes(); value >= 1; --value) {
    // Uniform starting cell, then walk inside the hook until a corner.
    const auto start = static_cast<int>(rng.below(static_cast<std::uint64_t>(len[0] + len[1])));
    int r = start < len[0] ? 0 : 1;
    int c = r == 0 ? start : start - len[0];
    for (;;) {
      const int arm = len[static_cast<std::size_t>(r)] - c - 1;
      const int leg = (r == 0 && len[1] > c) ? 1 : 0;
      if (arm + leg == 0) break;
      const auto pick = static_cast<int>(rng.below(static_cast<std::uint64_t>(arm + leg)));
      if (pick < arm) {
        c += pick + 1;
      } else {
        r = 1;
      }
    }
    auto& row = r == 0 ? t.top : t.bottom;
    row[static_cast<std::size_t>(c)] = value;
    --len[static_cast<std::size_t>(r)];
  }
  return t;
}

// ---------------------------------------------------------------------------
// Uniform (J, M) samplers

SchurLabel sample_uniform_jm_rejection(int n, Rng& rng) {
  check_qubits(n);
  const long cap = rejection_retry_cap(n);
  for (long trial = 0; trial < cap; ++trial) {
    const std::uint64_t steps = rng.next_u64() & low_mask(n - 1);
    int twice_j = 1;
    bool valid = true;
    for (int i = 0; i < n - 1 && valid; ++i) {
      twice_j += ((steps >> i) & 1U) != 0 ? 1 : -1;
      valid = twice_j >= 0;
    }
    if (!valid) continue;
    const auto m_prime = static_cast<int>(rng.below(static_cast<std::uint64_t>(n + 1))) + 1;
    if (m_prime > twice_j + 1) continue;
    // M = M' - J - 1
    return {SpinPath::from_steps_unchecked(n, steps), {2 * m_prime - twice_j - 2}};
  }
  fail(Errc::kRetryLimit, "uniform (J, M) rejection sampler exceeded its retry cap");
}

SchurLabel sample_uniform_jm_gnw(int n, Rng& rng) {
  check_qubits(n);
  if (n > 62) fail(Errc::kTooLarge, "GNW (J, M) sampler is limited to n <= 62");
  std::uint64_t u = rng.below(std::uint64_t{1} << n);
  int twice_j = n % 2;
  for (; twice_j <= n; twice_j += 2) {
    const auto weight = static_cast<std::uint64_t>((twice_j + 1) * dim_d(n, {twice_j}));
    if (u < weight) break;
    u -= weight;
  }
  const StdTableau2 tableau = gnw_sample_tableau(shape_for(n, {twice_j}), rng);
  const SpinPath path = tableau_to_path(tableau);
  const auto k = static_cast<int>(rng.below(static_cast<std::uint64_t>(twice_j + 1)));
  return {path, {2 * k - twice_j}};
}

}  // namespace schur
