// Copyright 2026 The schurkm Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file experiments.hpp
 * @brief Desk-scale experiments on permutational circuits: output matrices,
 * the sparsity scan and the character demo with its combinatorial oracle.
 *
 * Everything here runs on the dense oracle, so n is bounded by
 * max_dense_qubits() and by a hard cap of 12.
 */

#pragma once

#include <cstdint>
#include <vector>

#include "schur/circuits.hpp"
#include "schur/schur_states.hpp"
#include "schur/spin_combinatorics.hpp"

namespace schur {

inline constexpr int kMaxExperimentQubits = 12;

/// A partition of n given by cycle lengths. Parts >= 1, sorted descending.
struct CycleType {
  std::vector<int> parts;

  [[nodiscard]] int size() const noexcept;
  friend bool operator==(const CycleType&, const CycleType&) = default;
};

/// Throws BadPartition on a non-positive part. Parts are re-sorted.
CycleType make_cycle_type(std::vector<int> parts);
CycleType cycle_type(const PermutationGate& p);
/// All partitions of n, in reverse lexicographic order starting at (n).
std::vector<CycleType> all_cycle_types(int n);
/// A permutation on sum(parts) wires with the given cycle type, cycles on
/// consecutive wires.
PermutationGate representative(const CycleType& type);

/// chi_lambda evaluated on the class of `cycles`, by removing border strips
/// one cycle at a time. Throws BadPartition unless the shape is a two-row
/// partition whose box count equals the cycle sum.
BigInt mn_character(const YoungShape2& shape, const CycleType& cycles);

/// |<J', M | U_pi | J, M>|^2 for every pair of paths ending at J.
/// row = input path, column = output path; both in lexicographic order.
struct PqcMatrix {
  int n = 0;
  int twice_j = 0;
  int twice_m = 0;
  std::vector<SpinPath> paths;
  std::vector<double> values;

  [[nodiscard]] double at(std::size_t row, std::size_t col) const { return values[row * paths.size() + col]; }
};

/// Throws TooLarge above the experiment cap, OutOfRange / ParityMismatch on
/// an impossible (J, M).
PqcMatrix pqc_matrix(const PermutationGate& perm, int twice_j, int twice_m);

struct SparsityScanParams {
  int n_lo = 4;
  int n_hi = 10;
  int paths_per_n = 5;
  int perms_per_path = 10;
  std::uint64_t seed = 0;
  double c = 1.0;
  double d = 2.0;
  /// 0 = hardware concurrency.
  unsigned threads = 0;
};

struct SparsityInstance {
  SchurLabel input;
  PermutationGate perm = PermutationGate::identity(1);
  /// Output probabilities over the paths ending at the input J, with the
  /// input M; lexicographic path order. Other labels carry no mass.
  std::vector<double> block;
  double max_element = 0.0;
  double small_mass = 0.0;
  bool pass_a = false;
  bool pass_b = false;
  bool c_applicable = false;
  bool pass_c = false;
};

struct WilsonInterval {
  double lo = 0.0;
  double hi = 1.0;
};

/// 95% Wilson score interval for `passes` out of `trials`.
WilsonInterval wilson_interval(std::size_t passes, std::size_t trials);

struct SparsityRow {
  int n = 0;
  std::size_t instances = 0;
  std::size_t pass_a = 0;
  std::size_t pass_b = 0;
  std::size_t c_applicable = 0;
  std::size_t pass_c = 0;

  [[nodiscard]] double fraction_a() const;
  [[nodiscard]] double fraction_b() const;
  /// Over applicable instances; 1 when none apply.
  [[nodiscard]] double fraction_c() const;
};

struct SparsityReport {
  SparsityScanParams params;
  std::vector<SparsityRow> rows;
  std::vector<SparsityInstance> instances;
};

/// For each n: `paths_per_n` uniform paths, a uniform M for each, then
/// `perms_per_path` uniform permutations. Criteria on the exact output:
///   A  some element exceeds 1/(2n);
///   B  the elements below 1/(2n^2) sum to less than 1/(2n);
///   C  (only when d(J) > n) all but the largest floor(c log2(d)^d)
///      elements sum to less than 1/log2(d).
/// Throws TooLarge above the experiment cap, InvalidArgument on an empty
/// range or non-positive counts.
SparsityReport sparsity_scan(const SparsityScanParams& params);

struct CharacterDemo {
  int n = 0;
  int twice_j = 0;
  /// Sum of <J, M| U_pi |J, M> over every path ending at J and every M.
  double trace = 0.0;
  /// Probability of the all-zero outcome together with J.
  double probability = 0.0;
};

/// Builds 2^{-n/2} sum |J, M>|J, M> with the label copy held in a register
/// beside the J register, applies U_pi (as its swap network) to the first
/// register and the inverse preparation, and reads off the all-zero
/// amplitude on the J block. Throws TooLarge above the experiment cap.
CharacterDemo character_demo(const PermutationGate& perm, int twice_j);

}  // namespace schur
