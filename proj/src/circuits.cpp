// Copyright 2026 The schurkm Authors
// SPDX-License-Identifier: Apache-2.0

#include "schur/circuits.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

#include "schur/error.hpp"

namespace schur {

namespace {

void check_length(std::string_view x, int wires) {
  if (x.size() != static_cast<std::size_t>(wires)) {
    fail(Errc::kLengthMismatch,
         "bitstring length " + std::to_string(x.size()) + " differs from wire count " + std::to_string(wires));
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// ReversibleCircuit

ReversibleCircuit::ReversibleCircuit(int wires, std::size_t gate_budget) : wires_(wires), budget_(gate_budget) {
  if (wires < 1) fail(Errc::kInvalidArgument, "a circuit needs at least one wire");
  if (wires > kMaxWires) fail(Errc::kTooLarge, "circuits are limited to 64 wires");
}

void ReversibleCircuit::add(const Gate& gate) {
  if (gates_.size() >= budget_) fail(Errc::kTooLarge, "gate budget of " + std::to_string(budget_) + " exceeded");
  auto check_wire = [this](int w) {
    if (w < 0 || w >= wires_) fail(Errc::kOutOfRange, "wire index " + std::to_string(w + 1) + " out of range");
  };
  check_wire(gate.target);
  Bits cmask = 0;
  for (int i = 0; i < gate.num_controls(); ++i) {
    const int c = gate.controls[static_cast<std::size_t>(i)];
    check_wire(c);
    if (c == gate.target || (cmask & (Bits{1} << c)) != 0) {
      fail(Errc::kInvalidArgument, "gate wires must be distinct");
    }
    cmask |= Bits{1} << c;
  }
  gates_.push_back(gate);
  compiled_.emplace_back(cmask, Bits{1} << gate.target);
}

void ReversibleCircuit::add_x(int target) { add({GateKind::kX, {0, 0}, target}); }
void ReversibleCircuit::add_cnot(int control, int target) { add({GateKind::kCnot, {control, 0}, target}); }
void ReversibleCircuit::add_toffoli(int control1, int control2, int target) {
  add({GateKind::kToffoli, {control1, control2}, target});
}

void ReversibleCircuit::append(const ReversibleCircuit& other) {
  if (other.wires_ != wires_) fail(Errc::kDimensionMismatch, "appended circuit has a different wire count");
  for (const auto& g : other.gates_) add(g);
}

std::string apply(const ReversibleCircuit& c, std::string_view x) {
  check_length(x, c.wires());
  return format_bits(c.apply(parse_bits(x)), c.wires());
}

std::string invert_apply(const ReversibleCircuit& c, std::string_view x) {
  check_length(x, c.wires());
  return format_bits(c.invert_apply(parse_bits(x)), c.wires());
}

ReversibleCircuit random_circuit(int wires, int gates, Rng& rng) {
  ReversibleCircuit c(wires);
  const auto w = static_cast<std::uint64_t>(wires);
  for (int g = 0; g < gates; ++g) {
    const std::uint64_t kind = wires >= 3 ? rng.below(4) : (wires == 2 ? rng.below(2) : 0);
    const int t = static_cast<int>(rng.below(w));
    if (kind == 0) {
      c.add_x(t);
      continue;
    }
    int a = static_cast<int>(rng.below(w - 1));
    if (a >= t) ++a;
    if (kind == 1) {
      c.add_cnot(a, t);
      continue;
    }
    int b = static_cast<int>(rng.below(w - 2));
    for (int skip : {std::min(a, t), std::max(a, t)}) {
      if (b >= skip) ++b;
    }
    c.add_toffoli(a, b, t);
  }
  return c;
}

// ---------------------------------------------------------------------------
// PermutationGate

PermutationGate::PermutationGate(std::vector<int> one_line) : one_line_(std::move(one_line)) {
  const auto n = one_line_.size();
  if (n == 0) fail(Errc::kNotBijection, "empty permutation");
  if (n > static_cast<std::size_t>(kMaxWires)) fail(Errc::kTooLarge, "permutations are limited to 64 wires");
  std::vector<bool> seen(n, false);
  for (int v : one_line_) {
    if (v < 0 || static_cast<std::size_t>(v) >= n || seen[static_cast<std::size_t>(v)]) {
      fail(Errc::kNotBijection, "one-line form is not a bijection on 1.." + std::to_string(n));
    }
    seen[static_cast<std::size_t>(v)] = true;
  }
}

PermutationGate PermutationGate::identity(int n) {
  std::vector<int> v(static_cast<std::size_t>(n));
  std::iota(v.begin(), v.end(), 0);
  return PermutationGate(std::move(v));
}

PermutationGate PermutationGate::from_one_based(const std::vector<int>& one_line) {
  std::vector<int> v;
  v.reserve(one_line.size());
  for (int x : one_line) v.push_back(x - 1);
  return PermutationGate(std::move(v));
}

PermutationGate PermutationGate::from_cycles(std::string_view text, int n) {
  if (n < 1) fail(Errc::kInvalidArgument, "permutation size must be >= 1");
  std::vector<int> v(static_cast<std::size_t>(n), -1);
  std::size_t i = 0;
  auto skip_space = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i])) != 0) ++i;
  };
  skip_space();
  while (i < text.size()) {
    if (text[i] != '(') throw Error(Errc::kParse, "expected '(' in cycle notation", i);
    ++i;
    std::vector<int> cycle;
    for (;;) {
      skip_space();
      std::size_t start = i;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])) != 0) ++i;
      if (start == i) throw Error(Errc::kParse, "expected a wire number", i);
      const int w = std::stoi(std::string(text.substr(start, i - start)));
      if (w < 1 || w > n) fail(Errc::kNotBijection, "cycle entry " + std::to_string(w) + " outside 1.." + std::to_string(n));
      cycle.push_back(w - 1);
      skip_space();
      if (i < text.size() && text[i] == ',') {
        ++i;
        continue;
      }
      if (i < text.size() && text[i] == ')') {
        ++i;
        break;
      }
      throw Error(Errc::kParse, "expected ',' or ')'", i);
    }
    for (std::size_t c = 0; c < cycle.size(); ++c) {
      auto& slot = v[static_cast<std::size_t>(cycle[c])];
      if (slot != -1) fail(Errc::kNotBijection, "wire appears in more than one cycle");
      slot = cycle[(c + 1) % cycle.size()];
    }
    skip_space();
  }
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (v[k] == -1) v[k] = static_cast<int>(k);
  }
  return PermutationGate(std::move(v));
}

PermutationGate PermutationGate::parse(std::string_view text, int n) {
  const auto first = text.find_first_not_of(" \t");
  if (first != std::string_view::npos && text[first] == '(') return from_cycles(text, n);
  std::vector<int> v;
  std::size_t i = 0;
  while (i < text.size()) {
    if (std::isdigit(static_cast<unsigned char>(text[i])) != 0) {
      std::size_t start = i;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])) != 0) ++i;
      v.push_back(std::stoi(std::string(text.substr(start, i - start))));
    } else if (text[i] == ',' || text[i] == ' ' || text[i] == '[' || text[i] == ']') {
      ++i;
    } else {
      throw Error(Errc::kParse, "unexpected character in one-line permutation", i);
    }
  }
  if (n > 0 && static_cast<int>(v.size()) != n) {
    fail(Errc::kLengthMismatch, "permutation has " + std::to_string(v.size()) + " entries, expected " + std::to_string(n));
  }
  return from_one_based(v);
}

std::vector<int> PermutationGate::one_based() const {
  std::vector<int> v;
  v.reserve(one_line_.size());
  for (int x : one_line_) v.push_back(x + 1);
  return v;
}

Bits PermutationGate::apply(Bits x) const noexcept {
  Bits out = 0;
  for (std::size_t i = 0; i < one_line_.size(); ++i) {
    out |= ((x >> one_line_[i]) & 1U) << i;
  }
  return out;
}

Bits PermutationGate::invert_apply(Bits x) const noexcept {
  Bits out = 0;
  for (std::size_t i = 0; i < one_line_.size(); ++i) {
    out |= ((x >> i) & 1U) << one_line_[i];
  }
  return out;
}

PermutationGate PermutationGate::inverse() const {
  std::vector<int> v(one_line_.size());
  for (std::size_t i = 0; i < one_line_.size(); ++i) v[static_cast<std::size_t>(one_line_[i])] = static_cast<int>(i);
  return PermutationGate(std::move(v));
}

std::vector<int> PermutationGate::cycle_type() const {
  std::vector<int> out;
  std::vector<bool> seen(one_line_.size(), false);
  for (std::size_t s = 0; s < one_line_.size(); ++s) {
    if (seen[s]) continue;
    int len = 0;
    for (std::size_t i = s; !seen[i]; i = static_cast<std::size_t>(one_line_[i])) {
      seen[i] = true;
      ++len;
    }
    out.push_back(len);
  }
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

PermutationGate compose(const PermutationGate& pi, const PermutationGate& sigma) {
  if (pi.wires() != sigma.wires()) fail(Errc::kDimensionMismatch, "permutations act on different wire counts");
  std::vector<int> v(static_cast<std::size_t>(pi.wires()));
  for (int i = 0; i < pi.wires(); ++i) v[static_cast<std::size_t>(i)] = sigma(pi(i));
  return PermutationGate(std::move(v));
}

std::string perm_to_circuit_semantics(const PermutationGate& p, std::string_view x) {
  check_length(x, p.wires());
  return format_bits(p.apply(parse_bits(x)), p.wires());
}

PermutationGate build_uswaps(int n, int k) {
  if (k < 1 || k > n) fail(Errc::kBadK, "U_SWAPS needs 1 <= k <= n");
  if (n + k > kMaxWires) fail(Errc::kTooLarge, "U_SWAPS limited to 64 wires");
  PermutationGate id = PermutationGate::identity(n + k);
  std::vector<int> v = id.one_line();
  for (int i = 1; i <= k; ++i) std::swap(v[static_cast<std::size_t>(n + i - 1)], v[static_cast<std::size_t>(n - k + i - 1)]);
  return PermutationGate(std::move(v));
}

ReversibleCircuit permutation_circuit(const PermutationGate& p) {
  const int n = p.wires();
  ReversibleCircuit c(n);
  // cur[i] = source wire whose bit currently sits on wire i.
  std::vector<int> cur(static_cast<std::size_t>(n));
  std::iota(cur.begin(), cur.end(), 0);
  for (int i = 0; i < n; ++i) {
    if (cur[static_cast<std::size_t>(i)] == p(i)) continue;
    const auto j = static_cast<int>(std::find(cur.begin() + i, cur.end(), p(i)) - cur.begin());
    c.add_cnot(i, j);
    c.add_cnot(j, i);
    c.add_cnot(i, j);
    std::swap(cur[static_cast<std::size_t>(i)], cur[static_cast<std::size_t>(j)]);
  }
  return c;
}

PermutationGate random_permutation(int n, Rng& rng) {
  std::vector<int> v(static_cast<std::size_t>(n));
  std::iota(v.begin(), v.end(), 0);
  for (int i = n - 1; i > 0; --i) {
    const auto j = static_cast<std::size_t>(rng.below(static_cast<std::uint64_t>(i + 1)));
    std::swap(v[static_cast<std::size_t>(i)], v[j]);
  }
  return PermutationGate(std::move(v));
}

// ---------------------------------------------------------------------------
// States

PreparedState::PreparedState(ReversibleCircuit circuit, std::shared_ptr<const CtState> base)
    : circuit_(std::move(circuit)), base_(std::move(base)) {
  if (!base_) fail(Errc::kInvalidArgument, "null base state");
  if (circuit_.wires() < base_->num_qubits()) {
    fail(Errc::kDimensionMismatch, "circuit has fewer wires than the input state has qubits");
  }
  ancilla_mask_ = low_mask(circuit_.wires()) & ~low_mask(base_->num_qubits());
}

PreparedState::PreparedState(ReversibleCircuit circuit, const SchurLabel& input)
    : PreparedState(std::move(circuit), std::make_shared<SchurCtState>(input)) {}

double PreparedState::amplitude(Bits x) const {
  const Bits y = circuit_.invert_apply(x);
  if ((y & ancilla_mask_) != 0) return 0.0;
  return base_->amplitude(y);
}

Bits PreparedState::sample(Rng& rng) const { return circuit_.apply(base_->sample(rng)); }

PermutedState::PermutedState(PermutationGate perm, std::shared_ptr<const CtState> base)
    : perm_(std::move(perm)), base_(std::move(base)) {
  if (!base_) fail(Errc::kInvalidArgument, "null base state");
  if (perm_.wires() != base_->num_qubits()) fail(Errc::kDimensionMismatch, "permutation size differs from state size");
}

ProductState::ProductState(std::shared_ptr<const CtState> first, std::shared_ptr<const CtState> second)
    : first_(std::move(first)), second_(std::move(second)) {
  if (!first_ || !second_) fail(Errc::kInvalidArgument, "null factor state");
  shift_ = first_->num_qubits();
  if (shift_ + second_->num_qubits() > kMaxWires) fail(Errc::kTooLarge, "product state exceeds 64 qubits");
}

double ProductState::amplitude(Bits x) const {
  const double a = first_->amplitude(x & low_mask(shift_));
  if (a == 0.0) return 0.0;
  return a * second_->amplitude(x >> shift_);
}

Bits ProductState::sample(Rng& rng) const {
  const Bits a = first_->sample(rng);
  return a | (second_->sample(rng) << shift_);
}

}  // namespace schur
