// Copyright 2026 The schurkm Authors
// SPDX-License-Identifier: Apache-2.0

#include "schur/schur_states.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <string>

#include "schur/circuits.hpp"
#include "schur/clebsch_gordan.hpp"
#include "schur/error.hpp"

namespace schur {

namespace {

constexpr int kDefaultMaxDense = 14;

int spin_of_bit(Bits x, int i) noexcept { return bit_at(x, i) == 0 ? 1 : -1; }

}  // namespace

double amplitude(Bits x, const SchurLabel& label) noexcept {
  const int n = label.qubits();
  if (twice_weight_m(x, n) != label.twice_m()) return 0.0;
  const SpinPath& path = label.path;
  int twice_j = 1;
  int twice_m = spin_of_bit(x, 0);
  double amp = 1.0;
  for (int k = 1; k < n; ++k) {
    const int s = spin_of_bit(x, k);
    const bool up = path.step_up(k - 1);
    const int next_j = twice_j + (up ? 1 : -1);
    const int next_m = twice_m + s;
    if (std::abs(next_m) > next_j) return 0.0;
    amp *= cg_half_fast(twice_j, next_m, s, up);
    twice_j = next_j;
    twice_m = next_m;
  }
  return amp;
}

double amplitude(std::string_view x, const SchurLabel& label) {
  if (x.size() != static_cast<std::size_t>(label.qubits())) {
    fail(Errc::kLengthMismatch, "bitstring length " + std::to_string(x.size()) + " differs from qubit count " +
                                    std::to_string(label.qubits()));
  }
  return amplitude(parse_bits(x), label);
}

Bits sample_basis_state(const SchurLabel& label, Rng& rng) {
  const int n = label.qubits();
  const SpinPath& path = label.path;
  int twice_j = path.endpoint().twice;
  int twice_m = label.twice_m();
  Bits x = 0;
  for (int k = n - 1; k >= 1; --k) {
    const bool up = path.step_up(k - 1);
    const int prior_j = twice_j - (up ? 1 : -1);
    // Probability that qubit k+1 is spin up; the two branches sum to 1.
    double p_up = 0.0;
    if (std::abs(twice_m - 1) <= prior_j) {
      const double c = cg_half_fast(prior_j, twice_m, 1, up);
      p_up = c * c;
    }
    const int s = rng.uniform01() < p_up ? 1 : -1;
    if (s < 0) x |= Bits{1} << k;
    twice_m -= s;
    twice_j = prior_j;
  }
  if (twice_m < 0) x |= 1;
  return x;
}

int max_dense_qubits() {
  if (const char* env = std::getenv("SCHUR_MAX_DENSE_N"); env != nullptr && *env != '\0') {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != nullptr && *end == '\0' && v >= 1 && v <= 30) return static_cast<int>(v);
  }
  return kDefaultMaxDense;
}

void check_dense(int n) {
  const int limit = max_dense_qubits();
  if (n > limit) {
    fail(Errc::kTooLarge, "dense oracle limited to n <= " + std::to_string(limit) + " (set SCHUR_MAX_DENSE_N)");
  }
}

double DenseState::norm_squared() const {
  double s = 0.0;
  for (double a : amplitudes) s += a * a;
  return s;
}

DenseState dense_schur_vector(const SchurLabel& label) {
  const int n = label.qubits();
  check_dense(n);
  DenseState out{n, std::vector<double>(std::size_t{1} << n, 0.0)};
  for (Bits x = 0; x < (Bits{1} << n); ++x) out.amplitudes[x] = amplitude(x, label);
  return out;
}

DenseState dense_from(const CtState& state) {
  const int n = state.num_qubits();
  check_dense(n);
  DenseState out{n, std::vector<double>(std::size_t{1} << n, 0.0)};
  for (Bits x = 0; x < (Bits{1} << n); ++x) out.amplitudes[x] = state.amplitude(x);
  return out;
}

double LabelDistribution::at(const SchurLabel& label) const {
  auto it = std::lower_bound(entries.begin(), entries.end(), label,
                             [](const auto& e, const SchurLabel& l) { return e.first < l; });
  return (it != entries.end() && it->first == label) ? it->second : 0.0;
}

double LabelDistribution::marginal(const SpinPath& prefix) const {
  double s = 0.0;
  for (const auto& [label, v] : entries) {
    if (label.path.has_prefix(prefix)) s += v;
  }
  return s;
}

double LabelDistribution::path_total(const SpinPath& path) const {
  double s = 0.0;
  for (const auto& [label, v] : entries) {
    if (label.path == path) s += v;
  }
  return s;
}

double LabelDistribution::total() const {
  double s = 0.0;
  for (const auto& e : entries) s += e.second;
  return s;
}

LabelDistribution schur_coefficients(const DenseState& v) {
  const int n = v.n;
  check_dense(n);
  if (v.amplitudes.size() != (std::size_t{1} << n)) fail(Errc::kDimensionMismatch, "dense vector has wrong length");

  // Block (prefix path, 2m of the coupled prefix) -> vector over the
  // remaining qubits, indexed by the bits above the prefix.
  using Key = std::pair<SpinPath, int>;
  std::map<Key, std::vector<double>> blocks;
  const std::size_t half = std::size_t{1} << (n - 1);
  std::vector<double> up_part(half);
  std::vector<double> down_part(half);
  for (std::size_t r = 0; r < half; ++r) {
    up_part[r] = v.amplitudes[2 * r];
    down_part[r] = v.amplitudes[2 * r + 1];
  }
  blocks.emplace(Key{SpinPath{}, 1}, std::move(up_part));
  blocks.emplace(Key{SpinPath{}, -1}, std::move(down_part));

  for (int k = 1; k < n; ++k) {
    std::map<Key, std::vector<double>> next;
    const std::size_t len = std::size_t{1} << (n - k - 1);
    for (const auto& [key, vec] : blocks) {
      const auto& [prefix, twice_m] = key;
      const int twice_j = prefix.endpoint().twice;
      for (bool up : {false, true}) {
        if (!up && twice_j == 0) continue;
        const SpinPath child = prefix.extended(up);
        const int child_j = twice_j + (up ? 1 : -1);
        for (int s : {1, -1}) {
          const int child_m = twice_m + s;
          if (std::abs(child_m) > child_j) continue;
          const double c = cg_half_fast(twice_j, child_m, s, up);
          auto& dst = next[Key{child, child_m}];
          if (dst.empty()) dst.assign(len, 0.0);
          const std::size_t offset = s > 0 ? 0 : 1;
          for (std::size_t r = 0; r < len; ++r) dst[r] += c * vec[2 * r + offset];
        }
      }
    }
    blocks = std::move(next);
  }

  LabelDistribution out;
  out.n = n;
  out.entries.reserve(blocks.size());
  for (const auto& [key, vec] : blocks) out.entries.emplace_back(SchurLabel{key.first, {key.second}}, vec[0]);
  std::sort(out.entries.begin(), out.entries.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

LabelDistribution schur_distribution(const DenseState& v) {
  LabelDistribution d = schur_coefficients(v);
  for (auto& e : d.entries) e.second *= e.second;
  return d;
}

LabelDistribution exact_output_distribution(const ReversibleCircuit& circuit, const SchurLabel& input) {
  const int n = input.qubits();
  if (circuit.wires() != n) fail(Errc::kDimensionMismatch, "circuit wire count differs from the input qubit count");
  check_dense(n);
  DenseState out{n, std::vector<double>(std::size_t{1} << n, 0.0)};
  for (Bits x = 0; x < (Bits{1} << n); ++x) {
    const double a = amplitude(x, input);
    if (a != 0.0) out.amplitudes[circuit.apply(x)] = a;
  }
  return schur_distribution(out);
}

LabelDistribution exact_output_distribution(const PermutationGate& perm, const SchurLabel& input) {
  const int n = input.qubits();
  if (perm.wires() != n) fail(Errc::kDimensionMismatch, "permutation size differs from the input qubit count");
  check_dense(n);
  DenseState out{n, std::vector<double>(std::size_t{1} << n, 0.0)};
  for (Bits x = 0; x < (Bits{1} << n); ++x) {
    const double a = amplitude(x, input);
    if (a != 0.0) out.amplitudes[perm.apply(x)] = a;
  }
  return schur_distribution(out);
}

}  // namespace schur
