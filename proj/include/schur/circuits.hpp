// Copyright 2026 The schurkm Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file circuits.hpp
 * @brief Reversible X/CNOT/Toffoli circuits, wire permutations and the
 * tractable states they produce from coupled basis states.
 *
 * Wire indices are 0-based in this API and 1-based in every file format.
 */

#pragma once

#include <array>
#include <cstddef>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "schur/bits.hpp"
#include "schur/schur_states.hpp"

namespace schur {

enum class GateKind { kX, kCnot, kToffoli };

struct Gate {
  GateKind kind = GateKind::kX;
  /// Only the first num_controls() entries are meaningful.
  std::array<int, 2> controls{};
  int target = 0;

  [[nodiscard]] int num_controls() const noexcept { return static_cast<int>(kind); }
};

class ReversibleCircuit {
 public:
  static constexpr std::size_t kDefaultGateBudget = 1'000'000;

  explicit ReversibleCircuit(int wires, std::size_t gate_budget = kDefaultGateBudget);

  /// Each add_* validates wire indices and distinctness (OutOfRange,
  /// InvalidArgument) and the budget (TooLarge).
  void add_x(int target);
  void add_cnot(int control, int target);
  void add_toffoli(int control1, int control2, int target);
  void add(const Gate& gate);
  void append(const ReversibleCircuit& other);

  [[nodiscard]] int wires() const noexcept { return wires_; }
  [[nodiscard]] std::size_t gate_budget() const noexcept { return budget_; }
  [[nodiscard]] const std::vector<Gate>& gates() const noexcept { return gates_; }

  /// w(x).
  [[nodiscard]] Bits apply(Bits x) const noexcept {
    for (const auto& [cmask, tbit] : compiled_) {
      if ((x & cmask) == cmask) x ^= tbit;
    }
    return x;
  }
  /// w^{-1}(x): the same gates in reverse order, each being self-inverse.
  [[nodiscard]] Bits invert_apply(Bits x) const noexcept {
    for (auto it = compiled_.rbegin(); it != compiled_.rend(); ++it) {
      if ((x & it->first) == it->first) x ^= it->second;
    }
    return x;
  }

 private:
  int wires_;
  std::size_t budget_;
  std::vector<Gate> gates_;
  std::vector<std::pair<Bits, Bits>> compiled_;  // (control mask, target bit)
};

/// String forms; throw LengthMismatch if |x| differs from the wire count.
std::string apply(const ReversibleCircuit& c, std::string_view x);
std::string invert_apply(const ReversibleCircuit& c, std::string_view x);

/// U_pi |x_1 ... x_n> = |x_pi(1) ... x_pi(n)>: output bit i is input bit pi(i).
class PermutationGate {
 public:
  /// 0-based one-line notation. Throws NotBijection.
  explicit PermutationGate(std::vector<int> one_line);

  static PermutationGate identity(int n);
  /// 1-based one-line notation, as in files.
  static PermutationGate from_one_based(const std::vector<int>& one_line);
  /// Cycle notation such as "(1,2,3)(4,5)"; each cycle maps an entry to the
  /// next one. Fixed points may be omitted. Throws Parse / NotBijection.
  static PermutationGate from_cycles(std::string_view text, int n);
  /// Accepts cycle notation or a comma/space separated 1-based one-line list.
  static PermutationGate parse(std::string_view text, int n);

  [[nodiscard]] int wires() const noexcept { return static_cast<int>(one_line_.size()); }
  [[nodiscard]] const std::vector<int>& one_line() const noexcept { return one_line_; }
  [[nodiscard]] std::vector<int> one_based() const;
  [[nodiscard]] int operator()(int i) const { return one_line_[static_cast<std::size_t>(i)]; }

  [[nodiscard]] Bits apply(Bits x) const noexcept;
  [[nodiscard]] Bits invert_apply(Bits x) const noexcept;
  [[nodiscard]] PermutationGate inverse() const;
  /// Cycle lengths, descending.
  [[nodiscard]] std::vector<int> cycle_type() const;

  friend bool operator==(const PermutationGate&, const PermutationGate&) = default;

 private:
  std::vector<int> one_line_;
};

/// The gate acting as U_pi U_sigma, i.e. i -> sigma(pi(i)).
PermutationGate compose(const PermutationGate& pi, const PermutationGate& sigma);

/// String form of PermutationGate::apply. Throws LengthMismatch.
std::string perm_to_circuit_semantics(const PermutationGate& p, std::string_view x);

/// Swaps wire n+i with wire n-k+i (1-based), i = 1..k, on n+k wires.
/// Throws BadK unless 1 <= k <= n.
PermutationGate build_uswaps(int n, int k);

/// Swap network (three CNOTs per swap) with the same action as `p`.
ReversibleCircuit permutation_circuit(const PermutationGate& p);

/// W (base (x) |0^k>): amplitude <w^{-1}(x)| base, 0^k>, sampler w(y 0^k).
class PreparedState final : public CtState {
 public:
  /// Throws DimensionMismatch unless circuit.wires() == base qubits + k.
  PreparedState(ReversibleCircuit circuit, std::shared_ptr<const CtState> base);
  PreparedState(ReversibleCircuit circuit, const SchurLabel& input);

  [[nodiscard]] int num_qubits() const override { return circuit_.wires(); }
  [[nodiscard]] int ancillas() const noexcept { return circuit_.wires() - base_->num_qubits(); }
  [[nodiscard]] double amplitude(Bits x) const override;
  Bits sample(Rng& rng) const override;

  [[nodiscard]] const ReversibleCircuit& circuit() const noexcept { return circuit_; }

 private:
  ReversibleCircuit circuit_;
  std::shared_ptr<const CtState> base_;
  Bits ancilla_mask_;
};

/// U_pi applied to a tractable state.
class PermutedState final : public CtState {
 public:
  PermutedState(PermutationGate perm, std::shared_ptr<const CtState> base);

  [[nodiscard]] int num_qubits() const override { return perm_.wires(); }
  [[nodiscard]] double amplitude(Bits x) const override { return base_->amplitude(perm_.invert_apply(x)); }
  Bits sample(Rng& rng) const override { return perm_.apply(base_->sample(rng)); }

 private:
  PermutationGate perm_;
  std::shared_ptr<const CtState> base_;
};

/// first (x) second; first occupies the low wires.
class ProductState final : public CtState {
 public:
  ProductState(std::shared_ptr<const CtState> first, std::shared_ptr<const CtState> second);

  [[nodiscard]] int num_qubits() const override { return first_->num_qubits() + second_->num_qubits(); }
  [[nodiscard]] double amplitude(Bits x) const override;
  Bits sample(Rng& rng) const override;

 private:
  std::shared_ptr<const CtState> first_;
  std::shared_ptr<const CtState> second_;
  int shift_;
};

/// Circuit with `gates` random X/CNOT/Toffoli gates (Toffoli-heavy).
ReversibleCircuit random_circuit(int wires, int gates, Rng& rng);
/// Uniform permutation (Fisher-Yates).
PermutationGate random_permutation(int n, Rng& rng);

}  // namespace schur
