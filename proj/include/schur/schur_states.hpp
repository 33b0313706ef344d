// Copyright 2026 The schurkm Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file schur_states.hpp
 * @brief Sequentially coupled basis states: amplitudes, exact sampling and
 * the dense Schur-transform oracle.
 *
 * <x | J, M> is a product of one coupling coefficient per qubit k = 2..n,
 * driven by the running azimuthal value of x's prefix and the running spin
 * of the path prefix. All amplitudes are real.
 */

#pragma once

#include <string_view>
#include <utility>
#include <vector>

#include "schur/bits.hpp"
#include "schur/rng.hpp"
#include "schur/spin_combinatorics.hpp"

namespace schur {

/// Computationally tractable state: exact amplitudes and an exact sampler of
/// the amplitude-squared law.
class CtState {
 public:
  virtual ~CtState() = default;
  [[nodiscard]] virtual int num_qubits() const = 0;
  [[nodiscard]] virtual double amplitude(Bits x) const = 0;
  virtual Bits sample(Rng& rng) const = 0;
};

/// <x | label>; exactly 0 when the weight of x disagrees with M.
double amplitude(Bits x, const SchurLabel& label) noexcept;
/// Throws LengthMismatch unless |x| equals the label's qubit count.
double amplitude(std::string_view x, const SchurLabel& label);

/// Draws x with probability amplitude(x, label)^2 (backward sweep).
Bits sample_basis_state(const SchurLabel& label, Rng& rng);

class SchurCtState final : public CtState {
 public:
  explicit SchurCtState(SchurLabel label) : label_(std::move(label)) {}
  [[nodiscard]] int num_qubits() const override { return label_.qubits(); }
  [[nodiscard]] double amplitude(Bits x) const override { return schur::amplitude(x, label_); }
  Bits sample(Rng& rng) const override { return sample_basis_state(label_, rng); }
  [[nodiscard]] const SchurLabel& label() const noexcept { return label_; }

 private:
  SchurLabel label_;
};

/// Dense guard; SCHUR_MAX_DENSE_N overrides the default of 14.
int max_dense_qubits();
/// Throws TooLarge when n exceeds max_dense_qubits().
void check_dense(int n);

struct DenseState {
  int n = 0;
  /// Index = computational basis bitstring (qubit i is bit i-1).
  std::vector<double> amplitudes;

  [[nodiscard]] double norm_squared() const;
};

DenseState dense_schur_vector(const SchurLabel& label);
DenseState dense_from(const CtState& state);

/// Sorted (label, value) pairs covering every label on n qubits.
struct LabelDistribution {
  int n = 0;
  std::vector<std::pair<SchurLabel, double>> entries;

  /// Value for a label, 0 if absent.
  [[nodiscard]] double at(const SchurLabel& label) const;
  /// Total over labels whose path extends `prefix`.
  [[nodiscard]] double marginal(const SpinPath& prefix) const;
  /// Total over labels with the given path.
  [[nodiscard]] double path_total(const SpinPath& path) const;
  [[nodiscard]] double total() const;
};

/// Coefficients <J, M | v> for every label, by the coupling cascade in
/// O(n 2^n). Entries are amplitudes, not probabilities.
LabelDistribution schur_coefficients(const DenseState& v);
/// Elementwise squares of schur_coefficients.
LabelDistribution schur_distribution(const DenseState& v);

class ReversibleCircuit;
class PermutationGate;

/// p(J', M') = <J', M'| W |J, M>^2 over all output labels. The circuit must
/// act on exactly the label's qubits.
LabelDistribution exact_output_distribution(const ReversibleCircuit& circuit, const SchurLabel& input);
LabelDistribution exact_output_distribution(const PermutationGate& perm, const SchurLabel& input);

}  // namespace schur
