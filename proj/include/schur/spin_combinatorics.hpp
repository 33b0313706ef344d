// Copyright 2026 The schurkm Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file spin_combinatorics.hpp
 * @brief Branching-diagram paths, Yamanouchi symbols and two-row tableaux.
 *
 * Spins are stored doubled (2j, 2m) so half-integers stay exact. A path on n
 * qubits is its Yamanouchi symbol: n-1 steps, leftmost = earliest coupling,
 * '1' = total spin goes up by 1/2, '0' = down by 1/2. The start j = 1/2 is
 * implicit.
 */

#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "schur/rng.hpp"

namespace schur {

using BigInt = boost::multiprecision::cpp_int;

/// Twice a total spin quantum number (j, J).
struct DoubledSpin {
  int twice = 0;
  friend auto operator<=>(const DoubledSpin&, const DoubledSpin&) = default;
};

/// Twice an azimuthal quantum number (m, M).
struct DoubledAzimuthal {
  int twice = 0;
  friend auto operator<=>(const DoubledAzimuthal&, const DoubledAzimuthal&) = default;
};

inline constexpr int kMaxPathQubits = 64;

class SpinPath {
 public:
  /// The single-qubit path (no steps, J = 1/2).
  SpinPath() = default;

  /// Unchecked construction from packed steps; step i is bit i. Callers go
  /// through validate_path() unless the steps are known to be valid.
  static SpinPath from_steps_unchecked(int qubits, std::uint64_t steps);

  [[nodiscard]] int qubits() const noexcept { return qubits_; }
  [[nodiscard]] int num_steps() const noexcept { return qubits_ - 1; }
  [[nodiscard]] std::uint64_t steps() const noexcept { return steps_; }
  /// Step i (0-indexed) couples qubit i+2; true = spin increases.
  [[nodiscard]] bool step_up(int i) const noexcept { return ((steps_ >> i) & 1U) != 0; }

  /// Twice the total spin after coupling the first k qubits (1 <= k <= n).
  [[nodiscard]] int twice_j_at(int k) const noexcept;
  [[nodiscard]] DoubledSpin endpoint() const noexcept { return {twice_j_at(qubits_)}; }

  /// The path restricted to the first k qubits.
  [[nodiscard]] SpinPath prefix(int k) const;
  [[nodiscard]] bool has_prefix(const SpinPath& p) const noexcept;
  /// Appends one step. Throws InvalidYamanouchi if it would go below j = 0.
  [[nodiscard]] SpinPath extended(bool up) const;

  [[nodiscard]] std::string to_string() const;

  friend bool operator==(const SpinPath&, const SpinPath&) = default;
  /// Lexicographic order of the Yamanouchi strings (shorter prefix first).
  friend std::strong_ordering operator<=>(const SpinPath& a, const SpinPath& b) noexcept;

 private:
  int qubits_ = 1;
  std::uint64_t steps_ = 0;
};

/// Two-row Young diagram; row1 >= row2 >= 0.
struct YoungShape2 {
  int row1 = 0;
  int row2 = 0;

  [[nodiscard]] int boxes() const noexcept { return row1 + row2; }
  [[nodiscard]] DoubledSpin spin() const noexcept { return {row1 - row2}; }
  friend bool operator==(const YoungShape2&, const YoungShape2&) = default;
};

/// Shape (n/2 + J, n/2 - J). Throws ParityMismatch / OutOfRange.
YoungShape2 shape_for(int n, DoubledSpin spin);

/// Two-row tableau with entries 1..n.
struct StdTableau2 {
  std::vector<int> top;
  std::vector<int> bottom;

  [[nodiscard]] YoungShape2 shape() const noexcept {
    return {static_cast<int>(top.size()), static_cast<int>(bottom.size())};
  }
  [[nodiscard]] bool is_standard() const;
  friend bool operator==(const StdTableau2&, const StdTableau2&) = default;
};

/// Checks the prefix zero-count rule. Throws InvalidYamanouchi whose
/// position() is the length of the first violating prefix.
SpinPath validate_path(std::string_view bits);
SpinPath validate_path(int qubits, std::uint64_t steps);

inline DoubledSpin endpoint_spin(const SpinPath& path) noexcept { return path.endpoint(); }

/// All paths on n qubits in lexicographic order. n <= 20, else TooLarge.
std::vector<SpinPath> enumerate_paths(int n);

/// Number of paths on n qubits ending at J: C(n, n/2-J) - C(n, n/2-J-1).
BigInt dim_d(int n, DoubledSpin spin);

/// Exact binomial coefficient; zero outside 0 <= k <= n.
BigInt binomial(int n, int k);

StdTableau2 path_to_tableau(const SpinPath& path);
/// Throws NotStandard.
SpinPath tableau_to_path(const StdTableau2& tableau);

/// Uniformly random standard tableau of the given shape (hook walk).
StdTableau2 gnw_sample_tableau(const YoungShape2& shape, Rng& rng);

/// A sequentially coupled basis state |J, M>: a path plus its azimuthal
/// number. Invariant: |2M| <= 2J with matching parity (see make_label).
struct SchurLabel {
  SpinPath path;
  DoubledAzimuthal m;

  [[nodiscard]] int qubits() const noexcept { return path.qubits(); }
  [[nodiscard]] int twice_m() const noexcept { return m.twice; }
  friend bool operator==(const SchurLabel&, const SchurLabel&) = default;
  friend std::strong_ordering operator<=>(const SchurLabel& a, const SchurLabel& b) noexcept;
};

/// Checked constructor. Throws OutOfRange / ParityMismatch.
SchurLabel make_label(const SpinPath& path, int twice_m);

/// Retry cap of the rejection sampler.
constexpr long rejection_retry_cap(int n) noexcept { return 64L * n * n; }

/// Every (J, M) pair on n qubits with probability 2^-n, by drawing n-1
/// random bits plus M' in [1, n+1] and rejecting invalid draws. Throws
/// RetryLimit after rejection_retry_cap(n) trials.
SchurLabel sample_uniform_jm_rejection(int n, Rng& rng);

/// Same law as the rejection sampler: J ~ (2J+1) d(J) / 2^n, a uniform
/// tableau of shape (n/2+J, n/2-J), uniform M.
SchurLabel sample_uniform_jm_gnw(int n, Rng& rng);

}  // namespace schur
